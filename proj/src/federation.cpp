#include "tatl/federation.hpp"

#include <sstream>

namespace tatl {

Federation Federation::unite(const Federation& other) const {
    Federation out = *this;
    for (const Dbm& z : other.zones_) out.add(z);
    return out;
}

Federation Federation::intersect(const Federation& other) const {
    Federation out(frame_);
    for (const Dbm& a : zones_)
        for (const Dbm& b : other.zones_) out.add(a.intersect(b));
    return out;
}

Federation Federation::intersect(const Dbm& z) const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.intersect(z));
    return out;
}

Federation Federation::intersect(const ConstraintConjunction& cs) const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.intersect(cs));
    return out;
}

Federation Federation::subtract(const Dbm& z) const {
    Federation out(frame_);
    for (const Dbm& a : zones_)
        for (const Dbm& piece : a.subtract(z)) out.add(piece);
    return out;
}

Federation Federation::subtract(const Federation& other) const {
    Federation out = *this;
    for (const Dbm& z : other.zones_) {
        out = out.subtract(z);
        if (out.is_empty()) break;
    }
    return out;
}

Federation Federation::up() const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.up());
    return out;
}

Federation Federation::down() const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.down());
    return out;
}

Federation Federation::reset(const std::vector<int>& ys) const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.reset(ys));
    return out;
}

Federation Federation::free(int x) const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.free(x));
    return out;
}

Federation Federation::normalized() const {
    Federation out(frame_);
    for (const Dbm& a : zones_) out.add(a.normalized());
    return out;
}

bool Federation::subset_eq(const Federation& other) const {
    for (const Dbm& a : zones_) {
        // Cheap convex test first.
        bool covered = false;
        for (const Dbm& b : other.zones_)
            if (a.subset_eq(b)) { covered = true; break; }
        if (covered) continue;
        Federation rem(frame_);
        rem.add(a);
        if (!rem.subtract(other).is_empty()) return false;
    }
    return true;
}

Federation Federation::reduce() const {
    Federation out(frame_);
    for (size_t i = 0; i < zones_.size(); ++i) {
        bool drop = false;
        for (size_t j = 0; j < zones_.size() && !drop; ++j) {
            if (i == j) continue;
            if (!zones_[i].subset_eq(zones_[j])) continue;
            // Tie-break identical zones: keep the first.
            if (zones_[j].subset_eq(zones_[i]) && j > i) continue;
            drop = true;
        }
        if (!drop) out.add(zones_[i]);
    }
    return out;
}

std::string Federation::str() const {
    if (zones_.empty()) return "false";
    std::ostringstream os;
    for (size_t i = 0; i < zones_.size(); ++i) {
        if (i) os << " | ";
        os << "(" << zones_[i].str() << ")";
    }
    return os.str();
}

} // namespace tatl
