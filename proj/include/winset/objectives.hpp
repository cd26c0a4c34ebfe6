#pragma once

#include <numeric>
#include <optional>
#include <string>

#include "winset/arena.hpp"

namespace winset {

// Exact rational arithmetic for thresholds and cycle means. Magnitudes stay
// tiny (numerators bounded by n*W), so long long components with 128-bit
// cross multiplication are plenty.
struct Rational {
    long long num = 0;
    long long den = 1;  // always >= 1 after construction

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) {
        detail::require(d != 0, "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    static Rational integer(long long n) { return Rational(n, 1); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Payoff value of a vertex: a rational, or "minus infinity" (nullopt) when
// the qualitative part of the objective is hopeless. std::optional's
// ordering already places nullopt below every value, which is exactly the
// meaning we want.
using MpValue = std::optional<Rational>;

// One request/grant pair of a strong-fairness objective: a play satisfies
// the pair if visiting `request` infinitely often implies visiting `grant`
// infinitely often.
struct StreettPair {
    VertexSet request;
    VertexSet grant;
};

}  // namespace winset
