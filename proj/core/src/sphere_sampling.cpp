#include "openbook/sphere_sampling.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <thread>
#include <vector>

namespace openbook {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t radius_index, std::uint64_t sample_index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ radius_index) ^ sample_index);
}

Vec sphere_sample(std::size_t m, double eps, std::uint64_t seed, std::uint64_t radius_index,
                  std::uint64_t sample_index) {
    std::mt19937_64 rng(stream_seed(seed, radius_index, sample_index));
    std::normal_distribution<double> normal;
    Vec x(m);
    do {
        for (std::size_t i = 0; i < m; ++i) x[i] = normal(rng);
    } while (x.norm() < 1e-12);
    return retract(x, eps);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double psi_scale(const NumericGerm& g, double eps, std::uint64_t seed, std::size_t samples) {
    double scale = 0.0;
    for (std::size_t i = 0; i < samples; ++i)
        scale = std::max(scale, g.value(sphere_sample(g.m(), eps, seed, 0xface, i)).norm());
    return scale;
}

}  // namespace openbook
