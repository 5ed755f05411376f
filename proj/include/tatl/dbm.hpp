#ifndef TATL_DBM_HPP
#define TATL_DBM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tatl/bound.hpp"
#include "tatl/frame.hpp"

namespace tatl {

enum class SetRel { Equal, Subset, Superset, Incomparable };

// Difference bound matrix over a clock frame. Row/column 0 is the
// reference clock; clock i of the frame maps to index i+1. A Dbm is kept
// in canonical (shortest-path closed) form; the empty zone is a flag.
class Dbm {
  public:
    // Unconstrained zone (all clocks >= 0).
    static Dbm universe(FramePtr frame);
    // The origin: all clocks equal to 0.
    static Dbm zero(FramePtr frame);
    static Dbm empty(FramePtr frame);
    static Dbm from_constraints(FramePtr frame, const ConstraintConjunction& cs);

    const FramePtr& frame() const { return frame_; }
    size_t dim() const { return dim_; }
    bool is_empty() const { return empty_; }

    Bound at(size_t i, size_t j) const { return mat_[i * dim_ + j]; }

    bool contains(const Valuation& v) const;

    // Timed successors: delays from any point of the zone.
    Dbm up() const;
    // Timed predecessors, clamped at clock value 0.
    Dbm down() const;
    // Clocks in ys set to 0.
    Dbm reset(const std::vector<int>& ys) const;
    // Clock x unconstrained over [0, inf).
    Dbm free(int x) const;
    Dbm intersect(const ConstraintConjunction& cs) const;
    Dbm intersect(const Dbm& other) const;

    // Widen bounds beyond each clock's max constant; only formula clocks
    // are affected when model clocks sit under the ceiling.
    Dbm normalized() const;

    SetRel relation(const Dbm& other) const;
    bool subset_eq(const Dbm& other) const;

    // Zone minus zone, as a list of pairwise disjoint nonempty zones.
    std::vector<Dbm> subtract(const Dbm& other) const;

    // Canonical byte image, usable as a hash/memoization key. Empty zones
    // all map to the same key.
    std::string key() const;

    std::string str() const;

  private:
    Dbm(FramePtr frame, bool empty);
    void canonicalize();
    Bound& cell(size_t i, size_t j) { return mat_[i * dim_ + j]; }

    FramePtr frame_;
    size_t dim_;
    bool empty_;
    std::vector<Bound> mat_;
};

} // namespace tatl

#endif
