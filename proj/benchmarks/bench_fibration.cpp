#include <benchmark/benchmark.h>

#include "openbook/fibration.hpp"
#include "openbook/germ.hpp"

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

openbook::MapGerm seade() {
    return openbook::MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, kXYZ);
}

void BM_SampleLink(benchmark::State& state) {
    const auto g = seade();
    for (auto _ : state) benchmark::DoNotOptimize(openbook::sample_link(g, 0.5));
}
BENCHMARK(BM_SampleLink)->Unit(benchmark::kMillisecond);

void BM_TracePage(benchmark::State& state) {
    const auto g = seade();
    const auto s = openbook::direction_at(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(openbook::trace_page(g, 0.5, s));
}
BENCHMARK(BM_TracePage)->Unit(benchmark::kMillisecond);

void BM_SweepPage(benchmark::State& state) {
    const auto g = seade();
    openbook::TraceConfig cfg;
    cfg.step = 0.01;
    cfg.sweep_steps = static_cast<std::size_t>(state.range(0));
    const auto page = openbook::trace_page(g, 0.5, openbook::direction_at(0.0), cfg);
    for (auto _ : state) benchmark::DoNotOptimize(openbook::sweep_page(g, 0.5, page, cfg));
    state.counters["points"] = static_cast<double>(page.points.size());
}
BENCHMARK(BM_SweepPage)->Arg(180)->Arg(720)->Unit(benchmark::kMillisecond);

}  // namespace
