#ifndef TATL_FRAME_HPP
#define TATL_FRAME_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tatl/bound.hpp"
#include "tatl/rational.hpp"

namespace tatl {

// The set of clocks a DBM ranges over: the model clocks first, then any
// formula clocks introduced by freeze quantifiers. Each clock carries the
// largest constant it is ever compared against (the global ceiling for
// model clocks); bounds beyond that constant are irrelevant and may be
// widened away for formula clocks.
class ClockFrame {
  public:
    ClockFrame(std::vector<std::string> names, size_t model_count,
               std::vector<int64_t> max_consts)
        : names_(std::move(names)), model_count_(model_count),
          max_consts_(std::move(max_consts)) {
        if (names_.size() != max_consts_.size())
            throw std::invalid_argument("frame: names/consts size mismatch");
    }

    size_t size() const { return names_.size(); }
    size_t model_count() const { return model_count_; }
    const std::string& name(size_t i) const { return names_[i]; }
    int64_t max_const(size_t i) const { return max_consts_[i]; }
    bool is_formula_clock(size_t i) const { return i >= model_count_; }

    int find(const std::string& n) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return static_cast<int>(i);
        return -1;
    }

    friend bool operator==(const ClockFrame& a, const ClockFrame& b) {
        return a.names_ == b.names_ && a.model_count_ == b.model_count_ &&
               a.max_consts_ == b.max_consts_;
    }

  private:
    std::vector<std::string> names_;
    size_t model_count_;
    std::vector<int64_t> max_consts_;
};

using FramePtr = std::shared_ptr<const ClockFrame>;

// One conjunct "ci - cj (<|<=) m" over frame clocks; index -1 denotes the
// reference clock (constant 0).
struct AtomConstraint {
    int lhs; // clock index or -1
    int rhs; // clock index or -1
    Bound bound;

    bool holds(const std::vector<Rational>& val) const {
        Rational l = lhs < 0 ? Rational(0) : val[lhs];
        Rational r = rhs < 0 ? Rational(0) : val[rhs];
        return bound.admits(l - r);
    }
};

using ConstraintConjunction = std::vector<AtomConstraint>;

// Helpers to build "x op k" atoms.
inline AtomConstraint atom_le(int x, int64_t k) { return {x, -1, Bound::weak(k)}; }
inline AtomConstraint atom_lt(int x, int64_t k) { return {x, -1, Bound::strict(k)}; }
inline AtomConstraint atom_ge(int x, int64_t k) { return {-1, x, Bound::weak(-k)}; }
inline AtomConstraint atom_gt(int x, int64_t k) { return {-1, x, Bound::strict(-k)}; }

using Valuation = std::vector<Rational>;

} // namespace tatl

#endif
