#include "bslimits/solve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace bslimits {

namespace {

template <class T>
using Series = TruncatedSeries<T>;

// f((s x)^k) for f given as g(x) = f(s x).
template <class T>
Series<T> subst(const Series<T> &g, std::size_t k, const T &s) {
    if (k == 1 || s == T(1)) {
        return substitute_powers(g, k);
    }
    Series<T> r(g.order());
    T factor = T(1);
    for (std::size_t e = 1; e < k; ++e) {
        factor *= s;
    }
    T p = T(1);
    for (std::size_t j = 0; j * k <= g.order(); ++j) {
        r[j * k] = g[j] * p;
        p *= factor;
    }
    return r;
}

template <class T>
T inverse_of(std::size_t i) {
    return T(T(1) / T(static_cast<long>(i)));
}

// One Newton step for y = z exp(F(y)) given F(y) and dF/dy.
template <class T>
Series<T> newton_step(const Series<T> &y, const Series<T> &f, const Series<T> &df, const T &s) {
    const std::size_t w = y.order();
    const Series<T> ze = exp_series(f) * Series<T>::monomial(1, w, s);
    const Series<T> phi = y - ze;
    const Series<T> dphi = Series<T>::constant(T(1), w) - ze * df;
    return y - phi * reciprocal(dphi);
}

template <class T>
std::pair<Series<T>, Series<T>> labelled_rhs(const BlockClass &cls, const Series<T> &y) {
    auto d = cls.bprime(std::vector<Dual<Series<T>>>{{y, one_like(y)}});
    return {std::move(d.value), std::move(d.eps)};
}

// W = Z_B'(y, y(z^2), ...) with dW/dy (first argument), plus the exponent
// W + sum_{i>=2} W(z^i)/i.
template <class T>
std::pair<Series<T>, Series<T>> unlabelled_rhs(const BlockClass &cls, const Series<T> &y, const T &s) {
    const std::size_t w = y.order();
    std::vector<Dual<Series<T>>> args;
    args.push_back({y, one_like(y)});
    for (int k = 2; k <= cls.num_variables; ++k) {
        args.push_back({subst(y, static_cast<std::size_t>(k), s), Series<T>(w)});
    }
    auto d = cls.z_bprime(std::span<const Dual<Series<T>>>(args));
    Series<T> expo = d.value;
    for (std::size_t i = 2; i <= w; ++i) {
        expo += subst(d.value, i, s) * inverse_of<T>(i);
    }
    return {std::move(expo), std::move(d.eps)};
}

template <class T>
Series<T> solve_impl(const BlockClass &cls, std::size_t n, const T &s) {
    cls.check_order(n);
    if (n == 0) {
        return Series<T>(0);
    }
    Series<T> y = Series<T>::monomial(1, n, s);
    auto step = [&](const Series<T> &yw) {
        if (cls.kind == ClassKind::labelled) {
            auto [f, df] = labelled_rhs(cls, yw);
            return newton_step(yw, f, df, s);
        }
        auto [f, df] = unlabelled_rhs(cls, yw, s);
        return newton_step(yw, f, df, s);
    };
    // y is exact to order m; one step makes it exact to order 2m + 1.
    std::size_t m = 1;
    while (m < n) {
        const std::size_t w = std::min(2 * m + 1, n);
        y = step(y.with_order(w));
        m = w;
    }
    if constexpr (std::is_floating_point_v<T>) {
        y = step(y);
        for (std::size_t i = 0; i <= n; ++i) {
            if (!std::isfinite(y[i])) {
                throw std::overflow_error("series coefficients overflow at order " + std::to_string(i) +
                                          "; use a smaller z_scale");
            }
        }
    }
    return y;
}

} // namespace

ExactSeries solve_labelled_class(const BlockClass &cls, std::size_t n) {
    if (cls.kind != ClassKind::labelled) {
        throw std::invalid_argument("solve_labelled_class: class '" + cls.name + "' is unlabelled");
    }
    return solve_impl<Rational>(cls, n, Rational(1));
}

ExactSeries solve_unlabelled_class(const BlockClass &cls, std::size_t n) {
    if (cls.kind != ClassKind::unlabelled) {
        throw std::invalid_argument("solve_unlabelled_class: class '" + cls.name + "' is labelled");
    }
    return solve_impl<Rational>(cls, n, Rational(1));
}

ExactSeries solve_class(const BlockClass &cls, std::size_t n) {
    return solve_impl<Rational>(cls, n, Rational(1));
}

FloatSeries solve_labelled_class_float(const BlockClass &cls, std::size_t n, double z_scale) {
    if (cls.kind != ClassKind::labelled) {
        throw std::invalid_argument("solve_labelled_class_float: class '" + cls.name + "' is unlabelled");
    }
    return solve_impl<double>(cls, n, z_scale);
}

FloatSeries solve_unlabelled_class_float(const BlockClass &cls, std::size_t n, double z_scale) {
    if (cls.kind != ClassKind::unlabelled) {
        throw std::invalid_argument("solve_unlabelled_class_float: class '" + cls.name + "' is labelled");
    }
    return solve_impl<double>(cls, n, z_scale);
}

FloatSeries solve_class_float(const BlockClass &cls, std::size_t n, double z_scale) {
    if (!(z_scale > 0)) {
        throw std::invalid_argument("z_scale must be positive");
    }
    return solve_impl<double>(cls, n, z_scale);
}

FloatSeries substitute_powers_scaled(const FloatSeries &g, std::size_t k, double s) {
    if (k == 0) {
        throw std::invalid_argument("substitute_powers_scaled: power must be positive");
    }
    return subst(g, k, s);
}

namespace {

// Increasing f on (0, hi]; returns x with f(x) ~ 0.
template <class F>
double bisect(F f, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Upper end of the search bracket for an increasing function that becomes
// positive below `radius` (or somewhere, when radius is infinite).
template <class F>
double upper_bracket(F f, double radius, const std::string &what) {
    if (std::isfinite(radius)) {
        const double hi = radius * (1 - 1e-13);
        if (!(f(hi) > 0)) {
            throw NotSubcritical(what + ": no root below the radius of the block series");
        }
        return hi;
    }
    double hi = 1.0;
    while (!(f(hi) > 0)) {
        hi *= 2;
        if (hi > 1e6) {
            throw NotSubcritical(what + ": no root found");
        }
    }
    return hi;
}

SingularityData singularity_labelled(const BlockClass &cls, double tol, std::size_t order) {
    auto h = [&](double t) { return t * cls.bdoubleprime_at(t) - 1; };
    const double hi = upper_bracket(h, cls.y_radius, "not subcritical at this truncation");
    const double tau = bisect(h, 0.0, hi);
    const double bp = cls.bprime_at(tau);
    const double rho = tau * std::exp(-bp);

    FloatSeries jet = FloatSeries::monomial(1, 3);
    jet[0] = tau;
    const FloatSeries p = cls.bprime_at(jet);
    const double b2 = p[1];
    const double b3 = 2 * p[2];

    SingularityData out;
    out.rho = rho;
    out.tau = tau;
    out.b = std::sqrt(2 / (b2 * b2 + b3));
    out.A = out.b / (2 * std::sqrt(std::numbers::pi));
    out.truncation_order = static_cast<int>(order);
    out.residual = std::max(std::abs(tau * b2 - 1), std::abs(rho * std::exp(bp) - tau));
    if (out.residual > tol) {
        throw NotSubcritical("singular system residual " + std::to_string(out.residual) + " exceeds tolerance");
    }
    return out;
}

class UnlabelledSystem {
public:
    UnlabelledSystem(const BlockClass &cls, std::size_t order)
        : cls_(cls), c_(solve_unlabelled_class_float(cls, order)), dc_(derivative(c_)) {
        std::vector<FloatSeries> args{c_};
        for (int k = 2; k <= cls.num_variables; ++k) {
            args.push_back(substitute_powers(c_, k));
        }
        w_ = cls.z_at<FloatSeries>(args);
        dw_ = derivative(w_);
    }

    const FloatSeries &series() const { return c_; }

    // Arguments (y, C(z^2), ..., C(z^m)).
    std::vector<double> args(double y, double z) const {
        std::vector<double> a{y};
        for (int k = 2; k <= cls_.num_variables; ++k) {
            a.push_back(evaluate(c_, std::pow(z, k)));
        }
        return a;
    }

    double g(double y, double z) const { return cls_.z_at<double>(args(y, z)); }

    // (g_y, g_yy) from a jet in y.
    std::pair<double, double> g_y(double y, double z) const {
        const auto a = args(y, z);
        std::vector<FloatSeries> jet;
        for (std::size_t k = 0; k < a.size(); ++k) {
            FloatSeries s = FloatSeries::constant(a[k], 2);
            if (k == 0) {
                s[1] = 1;
            }
            jet.push_back(s);
        }
        const FloatSeries r = cls_.z_at<FloatSeries>(jet);
        return {r[1], 2 * r[2]};
    }

    double g_z(double y, double z) const {
        const auto a = args(y, z);
        std::vector<Dual<double>> d{{a[0], 0.0}};
        for (int k = 2; k <= cls_.num_variables; ++k) {
            d.push_back({a[k - 1], k * std::pow(z, k - 1) * evaluate(dc_, std::pow(z, k))});
        }
        return cls_.z_bprime(std::span<const Dual<double>>(d)).eps;
    }

    // A(z) = sum_{i>=2} W(z^i)/i and its derivative.
    std::pair<double, double> a_term(double z) const {
        double a = 0, da = 0;
        double zi = z;
        for (int i = 2; i < 4000; ++i) {
            const double prev = zi;
            zi *= z;
            if (zi < 1e-300) {
                break;
            }
            const double term = evaluate(w_, zi) / i;
            a += term;
            da += prev * evaluate(dw_, zi);
            if (std::abs(term) < 1e-20 * std::abs(a)) {
                break;
            }
        }
        return {a, da};
    }

    // Root of y g_y(y, z) = 1.
    double tangent_y(double z) const {
        auto f = [&](double y) { return y * g_y(y, z).first - 1; };
        const double hi = upper_bracket(f, cls_.y_radius, "not subcritical at this truncation");
        return bisect(f, 0.0, hi);
    }

    double h(double z) const {
        const double y = tangent_y(z);
        return z * std::exp(g(y, z) + a_term(z).first) - y;
    }

private:
    const BlockClass &cls_;
    FloatSeries c_, dc_, w_, dw_;
};

SingularityData singularity_unlabelled(const BlockClass &cls, double tol, std::size_t order) {
    if (order < 8) {
        throw std::invalid_argument("find_singularity: order must be at least 8");
    }
    UnlabelledSystem sys(cls, order);
    const auto &c = sys.series();
    const double ratio = c[order - 1] / c[order];
    if (!(ratio > 0 && ratio < 1)) {
        throw NotSubcritical("not subcritical at this truncation: coefficient ratio " + std::to_string(ratio));
    }
    double hi = ratio;
    auto h = [&](double z) { return sys.h(z); };
    int grow = 0;
    while (!(h(hi) > 0)) {
        hi *= 1.02;
        if (++grow > 20 || hi * hi >= ratio) {
            throw NotSubcritical("not subcritical at this truncation: no sign change of the singular system");
        }
    }
    const double lo = std::min(1e-3, 0.5 * ratio);
    if (!(h(lo) < 0)) {
        throw NotSubcritical("not subcritical at this truncation: bracket has no sign change");
    }
    const double rho = bisect(h, lo, hi);
    const double tau = sys.tangent_y(rho);
    const auto [gy, gyy] = sys.g_y(tau, rho);
    const auto [a, da] = sys.a_term(rho);
    const double gz = sys.g_z(tau, rho);

    SingularityData out;
    out.rho = rho;
    out.tau = tau;
    out.b = std::sqrt(2 * (1 + rho * (gz + da)) / (gy * gy + gyy));
    out.A = out.b / (2 * std::sqrt(std::numbers::pi));
    out.truncation_order = static_cast<int>(order);
    out.residual = std::max(std::abs(tau * gy - 1), std::abs(rho * std::exp(sys.g(tau, rho) + a) - tau));
    if (out.residual > tol) {
        throw NotSubcritical("singular system residual " + std::to_string(out.residual) + " exceeds tolerance");
    }
    return out;
}

} // namespace

SingularityData find_singularity(const BlockClass &cls, double tol, std::size_t order) {
    if (!(tol > 0)) {
        throw std::invalid_argument("find_singularity: tolerance must be positive");
    }
    if (order == 0) {
        order = static_cast<std::size_t>(cls.default_order);
        if (cls.valid_order) {
            order = std::min<std::size_t>(order, static_cast<std::size_t>(*cls.valid_order));
        }
    }
    cls.check_order(order);
    return cls.kind == ClassKind::labelled ? singularity_labelled(cls, tol, order)
                                           : singularity_unlabelled(cls, tol, order);
}

double fit_asymptotics(std::span<const double> coeffs, double rho, double rel_tol) {
    if (coeffs.size() < 41) {
        throw std::invalid_argument("fit_asymptotics: need coefficients to order at least 40");
    }
    if (!(rho > 0)) {
        throw std::invalid_argument("fit_asymptotics: rho must be positive");
    }
    auto a = [&](std::size_t n) {
        const double c = coeffs[n];
        if (!(c > 0)) {
            throw AsymptoticsMismatch("asymptotics mismatch: coefficient " + std::to_string(n) + " is not positive");
        }
        const double x = static_cast<double>(n);
        return std::exp(std::log(c) + x * std::log(rho)) * x * std::sqrt(x);
    };
    auto r2 = [&](std::size_t n) {
        const double x = static_cast<double>(n);
        return (x * x * a(n) - 2 * (x - 1) * (x - 1) * a(n - 1) + (x - 2) * (x - 2) * a(n - 2)) / 2;
    };
    const std::size_t n = coeffs.size() - 1;
    const double est = r2(n);
    const double check = r2(n - n / 4);
    if (!(est > 0) || !(check > 0) || std::abs(est - check) > rel_tol * std::abs(est)) {
        throw AsymptoticsMismatch("asymptotics mismatch: c_n rho^n n^{3/2} does not settle (" + std::to_string(check) +
                                  " at n=" + std::to_string(n - n / 4) + ", " + std::to_string(est) +
                                  " at n=" + std::to_string(n) + ")");
    }
    return est;
}

namespace {

template <class T>
Series<T> level_impl(const BlockClass &cls, int k, const Series<T> &c) {
    if (k < 1) {
        throw std::invalid_argument("level_series: k must be at least 1");
    }
    const std::size_t n = c.order();
    const T one(1);
    Series<T> t = c;
    if (cls.kind == ClassKind::labelled) {
        const Series<T> b2 = cls.bdoubleprime_at(c);
        for (int step = 1; step < k; ++step) {
            t = c * add_scalar(b2 * t, one);
        }
        return t;
    }
    std::vector<Series<T>> cs;
    for (int l = 1; l <= cls.num_variables; ++l) {
        cs.push_back(subst(c, static_cast<std::size_t>(l), one));
    }
    for (int step = 1; step < k; ++step) {
        std::vector<Dual<Series<T>>> args;
        for (int l = 1; l <= cls.num_variables; ++l) {
            args.push_back({cs[l - 1], subst(t, static_cast<std::size_t>(l), one) * T(static_cast<long>(l))});
        }
        const Series<T> d = cls.z_bprime(std::span<const Dual<Series<T>>>(args)).eps;
        Series<T> sum = d;
        for (std::size_t i = 2; i <= n; ++i) {
            sum += subst(d, i, one);
        }
        t = c * add_scalar(sum, one);
    }
    return t;
}

} // namespace

ExactSeries level_series(const BlockClass &cls, int k, std::size_t n) {
    return level_impl(cls, k, solve_class(cls, n));
}

FloatSeries level_series_float(const BlockClass &cls, int k, std::size_t n) {
    return level_impl(cls, k, solve_class_float(cls, n));
}

} // namespace bslimits
