#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lw {

/// Exact rational with i64 numerator/denominator, always normalized
/// (den > 0, gcd = 1). Denominators are kept below 1e6 by construction
/// in this codebase; overflow in intermediate products throws.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (den > 1000000) throw std::overflow_error("Rational: denominator exceeds 1e6");
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::domain_error("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace lw
