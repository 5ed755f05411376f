#ifndef TATL_FEDERATION_HPP
#define TATL_FEDERATION_HPP

#include <vector>

#include "tatl/dbm.hpp"

namespace tatl {

// Finite union of nonempty canonical zones over one frame. The empty
// federation is the bottom element; inclusion is the NOR ordering.
class Federation {
  public:
    // A default-constructed federation is an empty placeholder with no
    // frame; assign a real one before using set operations on it.
    Federation() = default;
    explicit Federation(FramePtr frame) : frame_(std::move(frame)) {}
    explicit Federation(const Dbm& z) : frame_(z.frame()) { add(z); }

    static Federation empty(FramePtr frame) { return Federation(std::move(frame)); }

    const FramePtr& frame() const { return frame_; }
    bool is_empty() const { return zones_.empty(); }
    size_t size() const { return zones_.size(); }
    const std::vector<Dbm>& zones() const { return zones_; }

    void add(const Dbm& z) {
        if (!z.is_empty()) zones_.push_back(z);
    }

    bool contains(const Valuation& v) const {
        for (const Dbm& z : zones_)
            if (z.contains(v)) return true;
        return false;
    }

    Federation unite(const Federation& other) const;
    Federation intersect(const Federation& other) const;
    Federation intersect(const Dbm& z) const;
    Federation intersect(const ConstraintConjunction& cs) const;
    Federation subtract(const Federation& other) const;
    Federation subtract(const Dbm& z) const;

    Federation up() const;
    Federation down() const;
    Federation reset(const std::vector<int>& ys) const;
    Federation free(int x) const;
    Federation normalized() const;

    bool subset_eq(const Federation& other) const;
    bool same_set(const Federation& other) const {
        return subset_eq(other) && other.subset_eq(*this);
    }

    // Drop zones included in another zone of the federation.
    Federation reduce() const;

    std::string str() const;

  private:
    FramePtr frame_;
    std::vector<Dbm> zones_;
};

} // namespace tatl

#endif
