#include <benchmark/benchmark.h>

#include "openbook/criteria.hpp"
#include "openbook/germ.hpp"

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

openbook::SamplerConfig one_radius(std::size_t samples) {
    openbook::SamplerConfig cfg;
    cfg.samples_per_sphere = samples;
    cfg.radii = {0.01};
    return cfg;
}

void BM_SubmersionOmega(benchmark::State& state) {
    const auto g = openbook::MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, kXYZ);
    const auto cfg = one_radius(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(openbook::submersion_test(g, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SubmersionOmega)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_SubmersionRank(benchmark::State& state) {
    const auto g = openbook::MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, kXYZ);
    const auto cfg = one_radius(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(openbook::submersion_rank_test(g, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SubmersionRank)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_WeightDetection(benchmark::State& state) {
    const auto g = openbook::MapGerm::from_strings({"x^2 - y^2 + z^3", "2*x*y"}, kXYZ);
    for (auto _ : state) benchmark::DoNotOptimize(openbook::detect_weights(g));
}
BENCHMARK(BM_WeightDetection);

}  // namespace
