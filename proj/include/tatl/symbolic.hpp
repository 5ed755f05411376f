#ifndef TATL_SYMBOLIC_HPP
#define TATL_SYMBOLIC_HPP

#include <map>
#include <set>

#include "tatl/federation.hpp"
#include "tatl/model.hpp"

namespace tatl {

// A model paired with a clock frame, caching the per-location universe
// zone: invariant plus the global ceiling on every model clock.
class GameFrame {
  public:
    GameFrame(const Tmg& model, FramePtr frame);

    const Tmg& model() const { return *model_; }
    const FramePtr& frame() const { return frame_; }
    const Dbm& universe(int loc) const { return universes_[loc]; }
    const ConstraintConjunction& guard(int edge) const { return guards_[edge]; }
    bool owned_by(int edge, const std::vector<int>& coalition) const;

  private:
    const Tmg* model_;
    FramePtr frame_;
    std::vector<Dbm> universes_;
    std::vector<ConstraintConjunction> guards_;
};

// Set of states: one federation per location, absent meaning empty. All
// member zones are clipped to the location universe.
class StateSet {
  public:
    explicit StateSet(const GameFrame& gf) : gf_(&gf) {}

    const GameFrame& game() const { return *gf_; }
    bool is_empty() const;
    const std::map<int, Federation>& parts() const { return parts_; }

    Federation at(int loc) const;
    void set(int loc, const Federation& fed);
    void add(int loc, const Dbm& zone);

    bool contains(int loc, const Valuation& v) const;

    StateSet unite(const StateSet& o) const;
    StateSet intersect(const StateSet& o) const;
    StateSet subtract(const StateSet& o) const;
    bool subset_eq(const StateSet& o) const;
    bool same_set(const StateSet& o) const {
        return subset_eq(o) && o.subset_eq(*this);
    }
    StateSet reduce() const;

    std::string str() const;

  private:
    const GameFrame* gf_;
    std::map<int, Federation> parts_;
};

StateSet full_state_set(const GameFrame& gf);
StateSet complement(const StateSet& w);

// Predecessors through one action: states from which taking the edge can
// land inside w.
StateSet pred_action(const GameFrame& gf, int edge, const StateSet& w);
// Successors through one action.
StateSet post_action(const GameFrame& gf, int edge, const StateSet& w);
// Union of pred_action over all actions owned by the coalition.
StateSet pred_coalition(const GameFrame& gf, const std::vector<int>& coalition,
                        const StateSet& w);
// Union of pred_action over every action.
StateSet pred_any(const GameFrame& gf, const StateSet& w);

// States of w where some declared invariant upper bound is tight, so time
// cannot advance. The global ceiling does not count: states at the cap
// stand in for the unbounded time above, where delay diverges.
StateSet timelocked(const GameFrame& gf, const StateSet& w);

// Timed predecessors of `good` along delays avoiding `bad` throughout,
// endpoint included.
StateSet pred_time(const GameFrame& gf, const StateSet& good,
                   const StateSet& bad);

// The controllable-predecessor style operators over a coalition.
StateSet forceable(const GameFrame& gf, const std::vector<int>& coalition,
                   const StateSet& w1, const StateSet& w2,
                   const StateSet& wnext);
StateSet unavoidable(const GameFrame& gf, const std::vector<int>& coalition,
                     const StateSet& w1, const StateSet& w2,
                     const StateSet& wnext);

} // namespace tatl

#endif
