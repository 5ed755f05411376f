#ifndef TATL_RATIONAL_HPP
#define TATL_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

namespace tatl {

// Exact rational with small numerator/denominator, used for concrete
// clock valuations and region representatives.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n) : num(n), den(1) {}
    Rational(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Rational operator+(Rational a, Rational b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(Rational a, Rational b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend bool operator==(Rational a, Rational b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(Rational a, Rational b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(Rational a, Rational b) {
        return a.num * b.den <= b.num * a.den;
    }
    friend bool operator>(Rational a, Rational b) { return b < a; }
    friend bool operator>=(Rational a, Rational b) { return b <= a; }

    int64_t floor() const {
        int64_t q = num / den;
        if (num < 0 && num % den != 0) --q;
        return q;
    }
    bool is_integer() const { return den == 1; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace tatl

#endif
