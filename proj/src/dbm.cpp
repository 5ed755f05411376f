#include "tatl/dbm.hpp"

#include <sstream>

namespace tatl {

Dbm::Dbm(FramePtr frame, bool empty)
    : frame_(std::move(frame)), dim_(frame_->size() + 1), empty_(empty),
      mat_(dim_ * dim_, Bound::inf()) {
    for (size_t i = 0; i < dim_; ++i) cell(i, i) = Bound::zero();
    for (size_t j = 0; j < dim_; ++j) cell(0, j) = Bound::zero();
}

Dbm Dbm::universe(FramePtr frame) {
    return Dbm(std::move(frame), false);
}

Dbm Dbm::zero(FramePtr frame) {
    Dbm d(std::move(frame), false);
    for (size_t i = 0; i < d.dim_; ++i)
        for (size_t j = 0; j < d.dim_; ++j) d.cell(i, j) = Bound::zero();
    return d;
}

Dbm Dbm::empty(FramePtr frame) {
    return Dbm(std::move(frame), true);
}

Dbm Dbm::from_constraints(FramePtr frame, const ConstraintConjunction& cs) {
    return universe(std::move(frame)).intersect(cs);
}

void Dbm::canonicalize() {
    if (empty_) return;
    // Implicit nonnegativity of clocks.
    for (size_t j = 1; j < dim_; ++j)
        if (Bound::zero() < cell(0, j)) cell(0, j) = Bound::zero();
    for (size_t i = 0; i < dim_; ++i) cell(i, i) = Bound::zero();
    for (size_t k = 0; k < dim_; ++k)
        for (size_t i = 0; i < dim_; ++i) {
            Bound ik = cell(i, k);
            if (ik.is_inf()) continue;
            for (size_t j = 0; j < dim_; ++j) {
                Bound alt = ik + cell(k, j);
                if (alt < cell(i, j)) cell(i, j) = alt;
            }
        }
    for (size_t i = 0; i < dim_; ++i)
        if (cell(i, i) < Bound::zero()) { empty_ = true; return; }
}

bool Dbm::contains(const Valuation& v) const {
    if (empty_) return false;
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Rational l = i == 0 ? Rational(0) : v[i - 1];
            Rational r = j == 0 ? Rational(0) : v[j - 1];
            if (!at(i, j).admits(l - r)) return false;
        }
    return true;
}

Dbm Dbm::up() const {
    if (empty_) return *this;
    Dbm d = *this;
    for (size_t i = 1; i < dim_; ++i) d.cell(i, 0) = Bound::inf();
    // Canonical form is preserved: only upper bounds were relaxed and any
    // path through row 0 cannot tighten a difference.
    return d;
}

Dbm Dbm::down() const {
    if (empty_) return *this;
    Dbm d = *this;
    for (size_t j = 1; j < dim_; ++j) d.cell(0, j) = Bound::zero();
    d.canonicalize();
    return d;
}

Dbm Dbm::reset(const std::vector<int>& ys) const {
    if (empty_) return *this;
    Dbm d = *this;
    for (int y : ys) {
        size_t x = static_cast<size_t>(y) + 1;
        for (size_t j = 0; j < d.dim_; ++j) {
            d.cell(x, j) = d.cell(0, j);
            d.cell(j, x) = d.cell(j, 0);
        }
        d.cell(x, x) = Bound::zero();
    }
    d.canonicalize();
    return d;
}

Dbm Dbm::free(int xc) const {
    if (empty_) return *this;
    Dbm d = *this;
    size_t x = static_cast<size_t>(xc) + 1;
    for (size_t j = 0; j < d.dim_; ++j) {
        if (j == x) continue;
        d.cell(x, j) = Bound::inf();
        d.cell(j, x) = d.cell(j, 0);
    }
    d.cell(x, 0) = Bound::inf();
    d.cell(0, x) = Bound::zero();
    d.canonicalize();
    return d;
}

Dbm Dbm::intersect(const ConstraintConjunction& cs) const {
    if (empty_) return *this;
    Dbm d = *this;
    for (const AtomConstraint& c : cs) {
        size_t i = static_cast<size_t>(c.lhs + 1);
        size_t j = static_cast<size_t>(c.rhs + 1);
        if (c.bound < d.cell(i, j)) d.cell(i, j) = c.bound;
    }
    d.canonicalize();
    return d;
}

Dbm Dbm::intersect(const Dbm& other) const {
    if (empty_) return *this;
    if (other.empty_) return other;
    Dbm d = *this;
    for (size_t i = 0; i < dim_ * dim_; ++i)
        if (other.mat_[i] < d.mat_[i]) d.mat_[i] = other.mat_[i];
    d.canonicalize();
    return d;
}

Dbm Dbm::normalized() const {
    if (empty_) return *this;
    Dbm d = *this;
    bool changed = false;
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = d.cell(i, j);
            if (i > 0) {
                Bound cap = Bound::weak(frame_->max_const(i - 1));
                if (!b.is_inf() && cap < b) {
                    d.cell(i, j) = Bound::inf();
                    changed = true;
                    continue;
                }
            }
            if (j > 0) {
                Bound floor = Bound::strict(-frame_->max_const(j - 1));
                if (b < floor) {
                    d.cell(i, j) = floor;
                    changed = true;
                }
            }
        }
    if (changed) d.canonicalize();
    return d;
}

SetRel Dbm::relation(const Dbm& other) const {
    bool sub = subset_eq(other);
    bool sup = other.subset_eq(*this);
    if (sub && sup) return SetRel::Equal;
    if (sub) return SetRel::Subset;
    if (sup) return SetRel::Superset;
    return SetRel::Incomparable;
}

bool Dbm::subset_eq(const Dbm& other) const {
    if (empty_) return true;
    if (other.empty_) return false;
    for (size_t i = 0; i < dim_ * dim_; ++i)
        if (other.mat_[i] < mat_[i]) return false;
    return true;
}

std::vector<Dbm> Dbm::subtract(const Dbm& other) const {
    std::vector<Dbm> out;
    if (empty_) return out;
    if (other.empty_) { out.push_back(*this); return out; }
    if (subset_eq(other)) return out;
    if (intersect(other).is_empty()) { out.push_back(*this); return out; }
    // Split along each constraint of `other` that actually cuts what is
    // left; imposing the constraint on the remainder afterwards keeps the
    // pieces pairwise disjoint, so chained subtractions stay small.
    Dbm rest = *this;
    for (size_t i = 0; i < dim_ && !rest.is_empty(); ++i)
        for (size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = other.at(i, j);
            if (b.is_inf()) continue;
            if (rest.at(i, j) <= b) continue; // nothing left violates it
            Dbm piece = rest;
            Bound neg = b.negated(); // constraint j - i (<|<=) -m
            if (neg < piece.cell(j, i)) piece.cell(j, i) = neg;
            piece.canonicalize();
            if (!piece.is_empty()) out.push_back(piece);
            rest.cell(i, j) = b;
            rest.canonicalize();
            if (rest.is_empty()) break;
        }
    return out;
}

std::string Dbm::key() const {
    if (empty_) return std::string("E");
    return std::string(reinterpret_cast<const char*>(mat_.data()),
                       mat_.size() * sizeof(Bound));
}

std::string Dbm::str() const {
    if (empty_) return "false";
    std::ostringstream os;
    bool first = true;
    auto clk = [&](size_t i) { return frame_->name(i - 1); };
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = at(i, j);
            if (b.is_inf()) continue;
            if (i == 0 && b == Bound::zero()) continue; // implicit x >= 0
            if (!first) os << " && ";
            first = false;
            if (i == 0) {
                os << clk(j) << (b.is_strict() ? " > " : " >= ") << -b.value();
            } else if (j == 0) {
                os << clk(i) << (b.is_strict() ? " < " : " <= ") << b.value();
            } else {
                os << clk(i) << " - " << clk(j)
                   << (b.is_strict() ? " < " : " <= ") << b.value();
            }
        }
    if (first) os << "true";
    return os.str();
}

} // namespace tatl
