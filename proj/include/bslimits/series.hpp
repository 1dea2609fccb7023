#pragma once

// Truncated formal power series over an exact (GMP rational) or floating
// coefficient ring, plus a forward-mode dual number used to take
// directional derivatives of block-class evaluators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bslimits/rational.hpp"

namespace bslimits {

template <class T>
class TruncatedSeries {
public:
    using value_type = T;

    TruncatedSeries() : coeffs_(1, T(0)) {}

    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, T(0)) {}

    explicit TruncatedSeries(std::vector<T> coeffs, std::string variable = "z")
        : coeffs_(std::move(coeffs)), variable_(std::move(variable)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("TruncatedSeries needs at least one coefficient");
        }
    }

    static TruncatedSeries constant(const T &c, std::size_t order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }

    // The series z (or c*z^k) truncated at `order`.
    static TruncatedSeries monomial(std::size_t k, std::size_t order, const T &c = T(1)) {
        TruncatedSeries s(order);
        if (k <= order) {
            s.coeffs_[k] = c;
        }
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    std::span<const T> coeffs() const { return coeffs_; }
    const std::string &variable() const { return variable_; }
    void set_variable(std::string v) { variable_ = std::move(v); }

    const T &operator[](std::size_t i) const { return coeffs_.at(i); }
    T &operator[](std::size_t i) { return coeffs_.at(i); }

    // Truncates or zero-extends. Extension is only meaningful for exactly
    // known (polynomial) data; callers are responsible for that.
    TruncatedSeries with_order(std::size_t order) const {
        TruncatedSeries r(order);
        r.variable_ = variable_;
        const std::size_t m = std::min(order, this->order());
        for (std::size_t i = 0; i <= m; ++i) {
            r.coeffs_[i] = coeffs_[i];
        }
        return r;
    }

    TruncatedSeries &operator+=(const TruncatedSeries &o) {
        shrink_to(o.order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        return *this;
    }

    TruncatedSeries &operator-=(const TruncatedSeries &o) {
        shrink_to(o.order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        return *this;
    }

    TruncatedSeries &operator+=(const T &c) {
        coeffs_[0] += c;
        return *this;
    }

    TruncatedSeries &operator-=(const T &c) {
        coeffs_[0] -= c;
        return *this;
    }

    TruncatedSeries &operator*=(const T &c) {
        for (auto &x : coeffs_) {
            x *= c;
        }
        return *this;
    }

    TruncatedSeries &operator*=(const TruncatedSeries &o) {
        *this = *this * o;
        return *this;
    }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
        const std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries r(n);
        r.variable_ = a.variable_;
        // Skip leading zeros of both factors; most series here start at z^1.
        std::size_t lo_a = 0;
        while (lo_a <= n && a.coeffs_[lo_a] == 0) {
            ++lo_a;
        }
        std::size_t lo_b = 0;
        while (lo_b <= n && b.coeffs_[lo_b] == 0) {
            ++lo_b;
        }
        if (lo_a + lo_b > n) {
            return r;
        }
        T tmp;
        for (std::size_t i = lo_a; i + lo_b <= n; ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = lo_b; i + j <= n; ++j) {
                tmp = a.coeffs_[i] * b.coeffs_[j];
                r.coeffs_[i + j] += tmp;
            }
        }
        return r;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }
    friend TruncatedSeries operator+(TruncatedSeries a, const T &c) { return a += c; }
    friend TruncatedSeries operator+(const T &c, TruncatedSeries a) { return a += c; }
    friend TruncatedSeries operator-(TruncatedSeries a, const T &c) { return a -= c; }
    friend TruncatedSeries operator-(const T &c, const TruncatedSeries &a) { return (-a) += c; }
    friend TruncatedSeries operator*(TruncatedSeries a, const T &c) { return a *= c; }
    friend TruncatedSeries operator*(const T &c, TruncatedSeries a) { return a *= c; }

    friend TruncatedSeries operator-(TruncatedSeries a) {
        for (auto &x : a.coeffs_) {
            x = -x;
        }
        return a;
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void shrink_to(std::size_t order) {
        if (order < this->order()) {
            coeffs_.resize(order + 1);
        }
    }

    std::vector<T> coeffs_;
    std::string variable_ = "z";
};

using ExactSeries = TruncatedSeries<Rational>;
using FloatSeries = TruncatedSeries<double>;

// exp(f) for f with zero constant term, via n g_n = sum_k k f_k g_{n-k}.
template <class T>
TruncatedSeries<T> exp_series(const TruncatedSeries<T> &f) {
    if (f[0] != 0) {
        throw std::domain_error("exp_series: constant term must be zero");
    }
    const std::size_t n = f.order();
    TruncatedSeries<T> g(n);
    g.set_variable(f.variable());
    g[0] = T(1);
    std::vector<T> kf(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        kf[k] = f[k] * T(static_cast<long>(k));
    }
    T acc, tmp;
    for (std::size_t m = 1; m <= n; ++m) {
        acc = 0;
        for (std::size_t k = 1; k <= m; ++k) {
            if (kf[k] == 0) {
                continue;
            }
            tmp = kf[k] * g[m - k];
            acc += tmp;
        }
        g[m] = acc / T(static_cast<long>(m));
    }
    return g;
}

// 1/f for f with nonzero constant term.
template <class T>
TruncatedSeries<T> reciprocal(const TruncatedSeries<T> &f) {
    if (f[0] == 0) {
        throw std::domain_error("reciprocal: constant term must be nonzero");
    }
    const std::size_t n = f.order();
    TruncatedSeries<T> g(n);
    g.set_variable(f.variable());
    const T inv0 = T(1) / f[0];
    g[0] = inv0;
    T acc, tmp;
    for (std::size_t m = 1; m <= n; ++m) {
        acc = 0;
        for (std::size_t k = 1; k <= m; ++k) {
            if (f[k] == 0) {
                continue;
            }
            tmp = f[k] * g[m - k];
            acc += tmp;
        }
        g[m] = -acc * inv0;
    }
    return g;
}

// f(z^i), keeping the order of f.
template <class T>
TruncatedSeries<T> substitute_powers(const TruncatedSeries<T> &f, std::size_t i) {
    if (i == 0) {
        throw std::invalid_argument("substitute_powers: power must be positive");
    }
    TruncatedSeries<T> r(f.order());
    r.set_variable(f.variable());
    for (std::size_t k = 0; k * i <= f.order(); ++k) {
        r[k * i] = f[k];
    }
    return r;
}

// d/dz; the result has order one less (order 0 stays order 0).
template <class T>
TruncatedSeries<T> derivative(const TruncatedSeries<T> &f) {
    const std::size_t n = f.order();
    TruncatedSeries<T> r(n == 0 ? 0 : n - 1);
    for (std::size_t k = 1; k <= n; ++k) {
        r[k - 1] = f[k] * T(static_cast<long>(k));
    }
    return r;
}

// Horner evaluation at a point of the coefficient ring or at a double.
template <class T, class X>
X evaluate(const TruncatedSeries<T> &f, const X &x) {
    X acc = X(0);
    for (std::size_t k = f.order() + 1; k-- > 0;) {
        if constexpr (std::is_same_v<X, double>) {
            acc = acc * x + to_double(f[k]);
        } else {
            acc = acc * x + X(f[k]);
        }
    }
    return acc;
}

// Forward-mode dual number a + b*eps with eps^2 = 0.
template <class R>
struct Dual {
    R value;
    R eps;

    Dual() = default;
    Dual(R v, R e) : value(std::move(v)), eps(std::move(e)) {}

    friend Dual operator+(const Dual &a, const Dual &b) { return {a.value + b.value, a.eps + b.eps}; }
    friend Dual operator-(const Dual &a, const Dual &b) { return {a.value - b.value, a.eps - b.eps}; }
    friend Dual operator*(const Dual &a, const Dual &b) {
        return {a.value * b.value, a.value * b.eps + a.eps * b.value};
    }
    friend Dual operator-(const Dual &a) { return {-a.value, -a.eps}; }
};

template <class R>
struct scalar_of;

template <>
struct scalar_of<double> {
    using type = double;
};

template <class T>
struct scalar_of<TruncatedSeries<T>> {
    using type = T;
};

template <class R>
struct scalar_of<Dual<R>> {
    using type = typename scalar_of<R>::type;
};

template <class R>
using scalar_t = typename scalar_of<R>::type;

// Ring-generic helpers used by class evaluators. Each works on double,
// TruncatedSeries<T> and Dual<...> of either.

inline double scale(double x, double c) { return x * c; }

template <class T>
TruncatedSeries<T> scale(TruncatedSeries<T> x, const T &c) {
    return x *= c;
}

template <class R>
Dual<R> scale(const Dual<R> &x, const scalar_t<R> &c) {
    return {scale(x.value, c), scale(x.eps, c)};
}

inline double add_scalar(double x, double c) { return x + c; }

template <class T>
TruncatedSeries<T> add_scalar(TruncatedSeries<T> x, const T &c) {
    return x += c;
}

template <class R>
Dual<R> add_scalar(const Dual<R> &x, const scalar_t<R> &c) {
    return {add_scalar(x.value, c), x.eps};
}

// exp(x) - 1, which keeps series arguments with zero constant term valid.
inline double expm1_of(double x) { return std::expm1(x); }

// A nonzero constant term is accepted in floating mode only.
template <class T>
TruncatedSeries<T> expm1_of(const TruncatedSeries<T> &x) {
    if constexpr (std::is_floating_point_v<T>) {
        if (x[0] != 0) {
            auto shifted = x;
            shifted[0] = 0;
            auto e = exp_series(shifted) * std::exp(x[0]);
            e[0] -= T(1);
            return e;
        }
    }
    auto e = exp_series(x);
    e[0] -= T(1);
    return e;
}

template <class R>
Dual<R> expm1_of(const Dual<R> &x) {
    R e = expm1_of(x.value);
    R full = add_scalar(e, scalar_t<R>(1));
    return {e, full * x.eps};
}

// 1/(1-x).
inline double geometric(double x) { return 1.0 / (1.0 - x); }

template <class T>
TruncatedSeries<T> geometric(const TruncatedSeries<T> &x) {
    return reciprocal(T(1) - x);
}

template <class R>
Dual<R> geometric(const Dual<R> &x) {
    R g = geometric(x.value);
    return {g, g * g * x.eps};
}

template <class R>
R zero_like(const R &);
template <class T>
TruncatedSeries<T> zero_like(const TruncatedSeries<T> &x);
template <class R>
Dual<R> zero_like(const Dual<R> &x);

template <class R>
R one_like(const R &) {
    return R(1);
}

template <class T>
TruncatedSeries<T> one_like(const TruncatedSeries<T> &x) {
    return TruncatedSeries<T>::constant(T(1), x.order());
}

template <class R>
Dual<R> one_like(const Dual<R> &x) {
    return {one_like(x.value), zero_like(x.eps)};
}

template <class R>
R zero_like(const R &) {
    return R(0);
}

template <class T>
TruncatedSeries<T> zero_like(const TruncatedSeries<T> &x) {
    return TruncatedSeries<T>(x.order());
}

template <class R>
Dual<R> zero_like(const Dual<R> &x) {
    return {zero_like(x.value), zero_like(x.eps)};
}

} // namespace bslimits
