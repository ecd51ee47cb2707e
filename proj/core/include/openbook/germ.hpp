#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "openbook/polynomial.hpp"

namespace openbook {

/// Polynomial map germ psi = (P_1, ..., P_p) : (R^m, 0) -> (R^p, 0), m > p >= 2.
class MapGerm {
public:
    /// Validates m > p >= 2, matching ring sizes and zero constant terms.
    MapGerm(std::vector<Polynomial> components, std::vector<std::string> var_names,
            std::string name = {});

    /// Parses each component over `var_names`.
    static MapGerm from_strings(const std::vector<std::string>& components,
                                std::vector<std::string> var_names, std::string name = {});

    std::size_t m() const { return var_names_.size(); }
    std::size_t p() const { return components_.size(); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& component(std::size_t i) const { return components_.at(i); }
    const std::vector<std::string>& var_names() const { return var_names_; }
    const std::string& name() const { return name_; }

    /// Same germ with every component multiplied by c.
    MapGerm scaled(const Rational& c) const;

    std::vector<std::string> component_strings() const;

private:
    std::vector<Polynomial> components_;
    std::vector<std::string> var_names_;
    std::string name_;
};

/// Point [s_1 : ... : s_p] of real projective space, stored with its first
/// nonzero coordinate equal to 1.
class ProjectiveDirection {
public:
    explicit ProjectiveDirection(std::vector<Rational> coords);

    const std::vector<Rational>& coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    /// Index of the canonical chart {s_i = 1}.
    std::size_t chart() const;

    friend bool operator==(const ProjectiveDirection&, const ProjectiveDirection&) = default;

private:
    std::vector<Rational> coords_;
};

enum class FieldLabel { omega, euler, fiber_singular };

std::string to_string(FieldLabel label);

/// Vector field on R^m with polynomial components.
struct SymbolicField {
    std::vector<Polynomial> components;
    FieldLabel label;
};

using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

/// p x m matrix whose row i is the gradient of P_i.
PolynomialMatrix jacobian(const MapGerm& g);

/// omega = P grad Q - Q grad P (p = 2 only).
SymbolicField omega(const MapGerm& g);

/// The 2x2 minors omega_i x_j - omega_j x_i of [omega; x], pairs (i, j),
/// i < j, in lexicographic order (p = 2 only).
std::vector<Polynomial> criterion_minors(const MapGerm& g);

/// The p-1 equations f_ij = s_j P_i - P_j (j != i) cutting out X_[s] in
/// chart i. `s` is rescaled so that s_i = 1; throws PreconditionError when
/// s_i = 0.
std::vector<Polynomial> fiber_equations(const MapGerm& g, const ProjectiveDirection& s,
                                        std::size_t chart);
/// Uses the canonical chart of `s`.
std::vector<Polynomial> fiber_equations(const MapGerm& g, const ProjectiveDirection& s);

/// t grad P - s grad Q for [s : t] (p = 2 only); its zero set is Sing X_[s:t].
SymbolicField fiber_singular_equations(const MapGerm& g, const ProjectiveDirection& s);

/// Euler field gamma = (w_1 x_1, ..., w_m x_m).
SymbolicField euler_field(std::size_t m, std::span<const std::int64_t> weights);

/// Polynomial with Gaussian-rational coefficients, f = re + i im.
struct GaussianPolynomial {
    Polynomial re;
    Polynomial im;
};

/// Parses an expression over complex variables; the identifier `i` is the
/// imaginary unit.
GaussianPolynomial parse_gaussian_polynomial(std::string_view text,
                                             std::span<const std::string> complex_vars);

/// Real germ (Re f, Im f) in m = 2n real variables, ordered
/// (x_1, y_1, x_2, y_2, ...) with z_j = x_j + i y_j. Throws when f(0) != 0.
MapGerm holomorphic_to_real(const GaussianPolynomial& f,
                            std::optional<std::vector<std::string>> real_var_names = std::nullopt,
                            std::string name = {});

/// Germ text format:
///
///     # comment
///     name: seade-ex-2
///     vars: x y z
///     P1 = z*(x^2+y^2+z^2)
///     P2 = y - x^3
///
/// or, for a holomorphic source, `cvars: z1 z2` plus `f = <expression>`.
MapGerm parse_germ_text(std::string_view text);
MapGerm load_germ_file(const std::filesystem::path& path);
std::string format_germ_text(const MapGerm& g);

}  // namespace openbook
