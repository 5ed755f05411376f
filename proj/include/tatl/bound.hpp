#ifndef TATL_BOUND_HPP
#define TATL_BOUND_HPP

#include <cstdint>
#include <limits>

#include "tatl/rational.hpp"

namespace tatl {

// A difference bound "x - y < m" or "x - y <= m", packed into one integer
// as 2*m + (1 if non-strict). This makes the natural ordering of bounds
// coincide with integer comparison: (m,<) < (m,<=) < (m+1,<).
struct Bound {
    int64_t raw;

    static constexpr int64_t INF_RAW = std::numeric_limits<int64_t>::max();

    static Bound inf() { return {INF_RAW}; }
    static Bound strict(int64_t m) { return {2 * m}; }
    static Bound weak(int64_t m) { return {2 * m + 1}; }
    static Bound zero() { return weak(0); }
    static Bound make(int64_t m, bool is_strict) {
        return is_strict ? strict(m) : weak(m);
    }

    bool is_inf() const { return raw == INF_RAW; }
    bool is_strict() const { return (raw & 1) == 0; }
    int64_t value() const { return raw >> 1; }

    friend bool operator==(Bound a, Bound b) { return a.raw == b.raw; }
    friend bool operator<(Bound a, Bound b) { return a.raw < b.raw; }
    friend bool operator<=(Bound a, Bound b) { return a.raw <= b.raw; }

    friend Bound operator+(Bound a, Bound b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return make(a.value() + b.value(), a.is_strict() || b.is_strict());
    }

    // Negation of the constraint: !(x-y < m) is (y-x <= -m).
    Bound negated() const {
        return make(-value(), !is_strict());
    }

    // Does d satisfy "d (<|<=) m"?
    bool admits(Rational d) const {
        if (is_inf()) return true;
        Rational m(value());
        return is_strict() ? d < m : d <= m;
    }
};

} // namespace tatl

#endif
