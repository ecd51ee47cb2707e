#include <benchmark/benchmark.h>

#include "openbook/germ.hpp"
#include "openbook/polynomial.hpp"

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

void BM_PolynomialProduct(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const auto a = openbook::parse_polynomial("x + 2*y - z/3 + 1", kXYZ).pow(n);
    const auto b = openbook::parse_polynomial("x*y - z^2 + 5", kXYZ).pow(n);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolynomialProduct)->DenseRange(2, 8, 2)->Complexity();

void BM_OmegaField(benchmark::State& state) {
    const auto g = openbook::MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, kXYZ);
    for (auto _ : state) benchmark::DoNotOptimize(openbook::omega(g));
}
BENCHMARK(BM_OmegaField);

void BM_CriterionMinors(benchmark::State& state) {
    const auto g = openbook::MapGerm::from_strings({"y*(x^2+y^2+z^2) + x^2", "x"}, kXYZ);
    for (auto _ : state) benchmark::DoNotOptimize(openbook::criterion_minors(g));
}
BENCHMARK(BM_CriterionMinors);

}  // namespace
