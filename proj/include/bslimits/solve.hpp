#pragma once

// Generating functions of rooted connected class members, the singular
// system at the radius of convergence, and coefficient asymptotics.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "bslimits/classes.hpp"
#include "bslimits/series.hpp"

namespace bslimits {

// C*(z) = z exp(B'(C*(z))), the exponential generating function of vertex
// rooted members. Newton iteration with precision doubling.
ExactSeries solve_labelled_class(const BlockClass &cls, std::size_t n);

// C*(z) = z exp(sum_i Z_B'(C*(z^i), C*(z^2i), ...) / i), the ordinary
// generating function of rooted unlabelled members.
ExactSeries solve_unlabelled_class(const BlockClass &cls, std::size_t n);

// Dispatches on cls.kind.
ExactSeries solve_class(const BlockClass &cls, std::size_t n);

// Floating point variants. With z_scale = s the result is C*(s z), which
// keeps the coefficients of large orders in range (take s close to rho).
FloatSeries solve_labelled_class_float(const BlockClass &cls, std::size_t n, double z_scale = 1.0);
FloatSeries solve_unlabelled_class_float(const BlockClass &cls, std::size_t n, double z_scale = 1.0);
FloatSeries solve_class_float(const BlockClass &cls, std::size_t n, double z_scale = 1.0);

struct SingularityData {
    double rho = 0;
    double tau = 0;
    double b = 0;
    double A = 0;
    int truncation_order = 0;
    double residual = 0;
};

// Thrown when the singular system has no root in the search bracket.
struct NotSubcritical : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solves y = z exp(B'(y)), 1 = y B''(y) (labelled) or the analogous system
// y = z exp(g(y, z) + A(z)), 1 = y g_y(y, z) (unlabelled) by nested
// bisection. b = sqrt(2 rho G_z / G_yy) for G(y, z) = y - z exp(...), so
// C*(z) = tau - b sqrt(1 - z/rho) + ... and A = b / (2 sqrt(pi)).
// order = 0 uses cls.default_order for the series of the unlabelled system.
SingularityData find_singularity(const BlockClass &cls, double tol = 1e-12, std::size_t order = 0);

struct AsymptoticsMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Extrapolated limit of c_n rho^n n^{3/2}, eliminating the 1/n and 1/n^2
// corrections. Throws AsymptoticsMismatch if the estimates at n = N and
// n = 3N/4 differ by more than rel_tol (relative), or are not positive.
// coeffs[n] must be c_n s^n when the series was computed with z_scale = s;
// pass rho / s as `rho` in that case.
double fit_asymptotics(std::span<const double> coeffs, double rho, double rel_tol = 1e-3);

inline double fit_asymptotics(const FloatSeries &f, double rho, double rel_tol = 1e-3) {
    return fit_asymptotics(f.coeffs(), rho, rel_tol);
}

// T^(k)(z): rooted members weighted by the number of vertices at level < k,
// the level being the number of blocks crossed on a path from the root.
// T^(1) = C*, T^(k+1) = C* (1 + sum_i sum_l l Z_l(C*(z^i), ...) T^(k)(z^{il})),
// Z_l the partial derivative of Z_B' in s_l. For labelled classes the
// recurrence reads T^(k+1) = C* (1 + B''(C*) T^(k)).
ExactSeries level_series(const BlockClass &cls, int k, std::size_t n);
FloatSeries level_series_float(const BlockClass &cls, int k, std::size_t n);

// Given g(x) = f(s x), returns f((s x)^k) as a series in x: coefficient
// g_j s^{j(k-1)} at x^{jk}. Equals substitute_powers when s = 1.
FloatSeries substitute_powers_scaled(const FloatSeries &g, std::size_t k, double s);

} // namespace bslimits
