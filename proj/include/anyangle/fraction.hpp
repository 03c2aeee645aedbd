#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>

namespace anyangle {

/// Exact rational number with a positive denominator, stored reduced.
///
/// Interval endpoints produced by line-of-sight scans are always projections
/// of integer tile corners through an integer source vertex, so denominators
/// never exceed the grid height and all arithmetic fits comfortably in
/// 64-bit integers on any map this library targets.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Fraction() = default;
    constexpr Fraction(std::int64_t n) : num(n), den(1) {}
    Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }

    /// Largest integer <= value.
    std::int64_t floor() const {
        if (num >= 0) return num / den;
        return -(((-num) + den - 1) / den);
    }

    /// Smallest integer >= value.
    std::int64_t ceil() const {
        if (num >= 0) return (num + den - 1) / den;
        return -((-num) / den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Fraction& a, const Fraction& b) {
        return a.num * b.den <= b.num * a.den;
    }
    friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
    friend bool operator>=(const Fraction& a, const Fraction& b) { return b <= a; }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        return Fraction(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) {
        return Fraction(a.num * b.den - b.num * a.den, a.den * b.den);
    }

    friend Fraction min(const Fraction& a, const Fraction& b) { return a < b ? a : b; }
    friend Fraction max(const Fraction& a, const Fraction& b) { return a < b ? b : a; }

    friend std::ostream& operator<<(std::ostream& os, const Fraction& f) {
        os << f.num;
        if (f.den != 1) os << '/' << f.den;
        return os;
    }
};

/// Projects the x-coordinate `x` on the grid line at distance `k` from the
/// scan source row onto the line at distance `k + 1`, through the source
/// column `sx`:  x' = sx + (x - sx) * (k + 1) / k.
inline Fraction project_step(const Fraction& x, std::int64_t sx, std::int64_t k) {
    return Fraction((x.num - sx * x.den) * (k + 1) + sx * x.den * k, x.den * k);
}

}  // namespace anyangle
