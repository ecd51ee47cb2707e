#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "openbook/germ.hpp"
#include "openbook/numeric_germ.hpp"

namespace openbook {

/// Three-valued answer to a condition that only makes sense "for all small
/// enough radii". HOLDS and FAILS from sampling are numeric evidence; only a
/// certificate turns HOLDS into a proof.
enum class Verdict { holds, fails, inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& text);

/// Primitive positive integer weights (w_1..w_m) and degree alpha.
struct WeightSystem {
    std::vector<std::int64_t> weights;
    std::int64_t degree = 0;
    /// Dimension of the rational solution space the weights were picked
    /// from; > 1 means the choice is not unique.
    std::size_t solution_dimension = 1;

    bool ambiguous() const { return solution_dimension > 1; }
    friend bool operator==(const WeightSystem& a, const WeightSystem& b) {
        return a.weights == b.weights && a.degree == b.degree;
    }
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t samples_per_sphere = 4096;
    /// Strictly decreasing radius schedule eps_k = eps_0 * r^k.
    std::vector<double> radii = geometric_radii(0.1, 0.1, 5);
    /// Points with |psi(x)| < tube_delta * scale are treated as lying on V.
    double tube_delta = 1e-7;
    int refine_steps = 200;
    /// Number of worst samples per radius handed to local refinement.
    std::size_t refine_seeds = 32;
    double hold_threshold = 1e-3;
    double fail_threshold = 1e-9;
    /// Hold threshold of the (heuristic) isolated-critical-point test.
    double icp_hold_threshold = 1e-7;
    /// Normalized-minor residual below which a point is reported in the M set.
    double witness_tolerance = 1e-8;
    /// Keep every sample's margin in the report (for CSV export).
    bool keep_samples = false;

    static std::vector<double> geometric_radii(double eps0, double ratio, int count);
    /// Throws InputError on an invalid configuration.
    void validate() const;
};

struct RadiusTrace {
    double epsilon = 0.0;
    double min_margin = 1.0;
    Vec argmin;
    std::size_t samples_used = 0;
    std::size_t excluded = 0;
};

struct Witness {
    std::size_t radius_index = 0;
    double epsilon = 0.0;
    Vec point;
    double margin = 0.0;
    /// lambda = <omega(x), x> / |x|^2 when omega is available.
    std::optional<double> lambda;
};

struct SampleRecord {
    std::size_t radius_index = 0;
    std::size_t sample_index = 0;
    Vec point;
    /// nullopt when the sample was excluded by the tube.
    std::optional<double> margin;
};

struct CriterionReport {
    std::string test;
    Verdict verdict = Verdict::inconclusive;
    std::vector<RadiusTrace> margin_trace;
    std::vector<Witness> witnesses;
    std::optional<std::string> certificate;
    SamplerConfig config;
    std::vector<SampleRecord> samples;
};

/// Certificate tag attached when the weighted-homogeneous identities hold.
inline constexpr const char* kWeightedHomogeneousCertificate = "theorem-4.1";

// ---- exact procedures -----------------------------------------------------

/// Solves sum_j w_j a_j = alpha over all monomials of all components and
/// returns the primitive positive generator, or nullopt when none exists.
std::optional<WeightSystem> detect_weights(const MapGerm& g);

/// sum_j w_j x_j dP_i/dx_j == alpha P_i for every component, exactly.
bool verify_euler_identity(const MapGerm& g, const WeightSystem& ws);

/// <gamma, grad f_ij> == alpha f_ij for the fiber equations of X_[s] in the
/// canonical chart of s, exactly.
bool verify_fiber_tangency(const MapGerm& g, const WeightSystem& ws, const ProjectiveDirection& s);

/// The p coordinate directions followed by the all-ones direction.
std::vector<ProjectiveDirection> tangency_probe_directions(std::size_t p);

/// HOLDS with the weighted-homogeneous certificate when the Euler identity,
/// the fiber tangency at every probe direction and positivity of
/// <gamma(x), x> = sum_j w_j x_j^2 all hold; nullopt otherwise.
std::optional<CriterionReport> weighted_certificate(const MapGerm& g, const WeightSystem& ws);

// ---- pointwise margins ----------------------------------------------------

/// 1 - |<omega/|omega|, x/|x|>| computed as sin^2/(1 + |cos|) from the
/// symbolic criterion minors; 0 where omega vanishes. Requires p = 2.
double omega_margin(const NumericGerm& g, const Vec& x);

/// sigma_{p-1}(A P_T) / sigma_{p-1}(A) for A = (I - u u^T) J / |psi| the
/// differential of psi/|psi| and P_T the projector onto x^perp. Requires
/// psi(x) != 0.
double rank_margin(const NumericGerm& g, const Vec& x);

/// sigma_p / sigma_1 of the Jacobian with rows scaled to unit length
/// (0 if a gradient vanishes).
double jacobian_rank_ratio(const NumericGerm& g, const Vec& x);

// ---- sampling procedures --------------------------------------------------

/// omega-route test of the submersion criterion (p = 2).
CriterionReport submersion_test(const MapGerm& g, const SamplerConfig& cfg = {});

/// Singular-value route, any p >= 2.
CriterionReport submersion_rank_test(const MapGerm& g, const SamplerConfig& cfg = {});

/// Heuristic check that 0 is an isolated critical point (no tube exclusion).
CriterionReport isolated_critical_point_test(const MapGerm& g, const SamplerConfig& cfg = {});

struct MSetWitnesses {
    /// Points with omega parallel to x and lambda bounded away from 0.
    std::vector<Witness> witnesses;
    /// Parallel points with lambda ~ 0 (not in M).
    std::vector<Witness> degenerate;
};

/// Refined points of {omega(x) = lambda x} on each sphere of the schedule,
/// deduplicated per radius (p = 2).
MSetWitnesses locate_m_set_witnesses(const MapGerm& g, const SamplerConfig& cfg = {});

}  // namespace openbook
