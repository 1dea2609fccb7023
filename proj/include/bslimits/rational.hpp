#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bslimits {

using Rational = mpq_class;

// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational &q);

// Coefficient conversion used by the generic evaluators.
template <class C>
C from_rational(const Rational &q);

template <>
inline double from_rational<double>(const Rational &q) {
    return q.get_d();
}

template <>
inline Rational from_rational<Rational>(const Rational &q) {
    return q;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational &q) { return q.get_d(); }

} // namespace bslimits
