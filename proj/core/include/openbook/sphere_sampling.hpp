#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "openbook/numeric_germ.hpp"

namespace openbook {

/// Seed of the independent RNG stream for (seed, radius index, sample index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t radius_index, std::uint64_t sample_index);

/// Quasi-uniform point on the sphere of radius eps in R^m: a normalized
/// standard Gaussian vector drawn from the stream above. Depends only on its
/// arguments, so results do not depend on evaluation order.
Vec sphere_sample(std::size_t m, double eps, std::uint64_t seed, std::uint64_t radius_index,
                  std::uint64_t sample_index);

/// Runs body(i) for i in [0, n) on a pool of worker threads. Each index
/// must write only to its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Largest |psi| over `samples` sphere points; used as the reference scale
/// for the tube {|psi| < tau * scale} around V.
double psi_scale(const NumericGerm& g, double eps, std::uint64_t seed, std::size_t samples = 1024);

}  // namespace openbook
