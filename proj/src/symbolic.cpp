#include "tatl/symbolic.hpp"

#include <algorithm>
#include <sstream>

namespace tatl {

GameFrame::GameFrame(const Tmg& model, FramePtr frame)
    : model_(&model), frame_(std::move(frame)) {
    for (const Location& l : model.locations) {
        ConstraintConjunction cs = to_constraints(l.invariant);
        for (size_t c = 0; c < model.clocks.size(); ++c)
            cs.push_back(atom_le(static_cast<int>(c), model.ceiling));
        universes_.push_back(Dbm::from_constraints(frame_, cs));
    }
    for (const Edge& e : model.edges)
        guards_.push_back(to_constraints(e.guard));
}

bool GameFrame::owned_by(int edge, const std::vector<int>& coalition) const {
    int p = model_->edges[edge].player;
    return std::find(coalition.begin(), coalition.end(), p) != coalition.end();
}

bool StateSet::is_empty() const {
    for (const auto& [loc, fed] : parts_)
        if (!fed.is_empty()) return false;
    return true;
}

Federation StateSet::at(int loc) const {
    auto it = parts_.find(loc);
    if (it != parts_.end()) return it->second;
    return Federation::empty(gf_->frame());
}

void StateSet::set(int loc, const Federation& fed) {
    if (fed.is_empty()) parts_.erase(loc);
    else parts_.insert_or_assign(loc, fed);
}

void StateSet::add(int loc, const Dbm& zone) {
    if (zone.is_empty()) return;
    auto it = parts_.find(loc);
    if (it == parts_.end())
        parts_.emplace(loc, Federation(zone));
    else
        it->second.add(zone);
}

bool StateSet::contains(int loc, const Valuation& v) const {
    auto it = parts_.find(loc);
    return it != parts_.end() && it->second.contains(v);
}

StateSet StateSet::unite(const StateSet& o) const {
    StateSet out = *this;
    for (const auto& [loc, fed] : o.parts_)
        out.set(loc, out.at(loc).unite(fed));
    return out;
}

StateSet StateSet::intersect(const StateSet& o) const {
    StateSet out(*gf_);
    for (const auto& [loc, fed] : parts_) {
        auto it = o.parts_.find(loc);
        if (it != o.parts_.end()) out.set(loc, fed.intersect(it->second));
    }
    return out;
}

StateSet StateSet::subtract(const StateSet& o) const {
    StateSet out(*gf_);
    for (const auto& [loc, fed] : parts_) {
        auto it = o.parts_.find(loc);
        out.set(loc, it == o.parts_.end() ? fed : fed.subtract(it->second));
    }
    return out;
}

bool StateSet::subset_eq(const StateSet& o) const {
    for (const auto& [loc, fed] : parts_) {
        auto it = o.parts_.find(loc);
        if (it == o.parts_.end()) {
            if (!fed.is_empty()) return false;
        } else if (!fed.subset_eq(it->second)) {
            return false;
        }
    }
    return true;
}

StateSet StateSet::reduce() const {
    StateSet out(*gf_);
    for (const auto& [loc, fed] : parts_) out.set(loc, fed.reduce());
    return out;
}

std::string StateSet::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [loc, fed] : parts_) {
        if (fed.is_empty()) continue;
        if (!first) os << ", ";
        first = false;
        os << gf_->model().locations[loc].name << ": " << fed.str();
    }
    if (first) os << "{}";
    return os.str();
}

StateSet full_state_set(const GameFrame& gf) {
    StateSet out(gf);
    for (size_t l = 0; l < gf.model().locations.size(); ++l)
        out.add(static_cast<int>(l), gf.universe(static_cast<int>(l)));
    return out;
}

StateSet complement(const StateSet& w) {
    const GameFrame& gf = w.game();
    StateSet out(gf);
    for (size_t l = 0; l < gf.model().locations.size(); ++l) {
        int loc = static_cast<int>(l);
        Federation uni(gf.universe(loc));
        out.set(loc, uni.subtract(w.at(loc)).reduce());
    }
    return out;
}

StateSet pred_action(const GameFrame& gf, int edge, const StateSet& w) {
    const Edge& e = gf.model().edges[edge];
    StateSet out(gf);
    Federation target = w.at(e.dst);
    if (target.is_empty()) return out;
    // Keep only target states reachable by the reset, undo the resets,
    // then confine to guard and source universe.
    ConstraintConjunction zeroed;
    for (int c : e.resets) {
        zeroed.push_back(atom_le(c, 0));
        zeroed.push_back(atom_ge(c, 0));
    }
    Federation fed = target.intersect(zeroed);
    for (int c : e.resets) fed = fed.free(c);
    fed = fed.intersect(gf.guard(edge)).intersect(gf.universe(e.src));
    out.set(e.src, fed.reduce());
    return out;
}

StateSet post_action(const GameFrame& gf, int edge, const StateSet& w) {
    const Edge& e = gf.model().edges[edge];
    StateSet out(gf);
    Federation src = w.at(e.src);
    if (src.is_empty()) return out;
    Federation fed = src.intersect(gf.guard(edge)).intersect(gf.universe(e.src));
    fed = fed.reset(e.resets).intersect(gf.universe(e.dst));
    out.set(e.dst, fed.reduce());
    return out;
}

StateSet pred_coalition(const GameFrame& gf, const std::vector<int>& coalition,
                        const StateSet& w) {
    StateSet out(gf);
    for (size_t e = 0; e < gf.model().edges.size(); ++e)
        if (gf.owned_by(static_cast<int>(e), coalition))
            out = out.unite(pred_action(gf, static_cast<int>(e), w));
    return out.reduce();
}

StateSet pred_any(const GameFrame& gf, const StateSet& w) {
    StateSet out(gf);
    for (size_t e = 0; e < gf.model().edges.size(); ++e)
        out = out.unite(pred_action(gf, static_cast<int>(e), w));
    return out.reduce();
}

StateSet timelocked(const GameFrame& gf, const StateSet& w) {
    const Tmg& m = gf.model();
    StateSet out(gf);
    for (const auto& [loc, fed] : w.parts()) {
        if (fed.is_empty()) continue;
        Federation res(gf.frame());
        auto tight = [&](int clock, int64_t k) {
            ConstraintConjunction at_k{atom_ge(clock, k)};
            res = res.unite(fed.intersect(at_k));
        };
        // Only declared invariant bounds stop time. States sitting at the
        // global ceiling stand in for everything above it, where time can
        // still diverge, so the ceiling is not a time-lock.
        for (const ClockCmp& c : m.locations[loc].invariant)
            if (c.op == CmpOp::Le || c.op == CmpOp::Eq) tight(c.clock, c.k);
        out.set(loc, res.reduce());
    }
    return out;
}

StateSet pred_time(const GameFrame& gf, const StateSet& good,
                   const StateSet& bad) {
    StateSet out(gf);
    for (const auto& [loc, gfed] : good.parts()) {
        if (gfed.is_empty()) continue;
        Federation bfed = bad.at(loc).reduce();
        Federation res = gfed.down();
        // Avoiding each bad zone cuts the delay ray at a per-zone
        // threshold, so applying the zones one after the other is exact:
        // keep the part that ducks under the obstacle entirely, plus the
        // part that reaches a target strictly before it.
        for (const Dbm& b : bfed.zones()) {
            if (res.is_empty()) break;
            Dbm down_b = b.down();
            if (res.intersect(down_b).is_empty()) continue;
            Federation before = gfed.intersect(down_b).subtract(b).down();
            res = res.subtract(down_b).unite(res.intersect(before)).reduce();
        }
        out.set(loc, res.intersect(gf.universe(loc)).reduce());
    }
    return out;
}

StateSet forceable(const GameFrame& gf, const std::vector<int>& coalition,
                   const StateSet& w1, const StateSet& w2,
                   const StateSet& wnext) {
    std::vector<int> all;
    for (size_t p = 0; p < gf.model().players.size(); ++p)
        all.push_back(static_cast<int>(p));
    std::vector<int> opponents;
    for (int p : all)
        if (std::find(coalition.begin(), coalition.end(), p) == coalition.end())
            opponents.push_back(p);

    StateSet not_next = complement(wnext);
    StateSet h = timelocked(gf, full_state_set(gf))
                     .intersect(pred_coalition(gf, opponents, wnext))
                     .subtract(pred_any(gf, not_next));
    StateSet good =
        w2.unite(pred_coalition(gf, coalition, wnext)).unite(h).reduce();
    StateSet bad = complement(w1)
                       .unite(pred_coalition(gf, opponents, not_next))
                       .subtract(w2)
                       .reduce();
    return pred_time(gf, good, bad);
}

StateSet unavoidable(const GameFrame& gf, const std::vector<int>& coalition,
                     const StateSet& w1, const StateSet& w2,
                     const StateSet& wnext) {
    std::vector<int> opponents;
    for (size_t p = 0; p < gf.model().players.size(); ++p) {
        int pp = static_cast<int>(p);
        if (std::find(coalition.begin(), coalition.end(), pp) == coalition.end())
            opponents.push_back(pp);
    }

    StateSet not_next = complement(wnext);
    StateSet h = timelocked(gf, full_state_set(gf))
                     .intersect(pred_coalition(gf, coalition, wnext));
    StateSet good =
        w2.unite(pred_coalition(gf, opponents, wnext)).unite(h).reduce();
    StateSet bad = complement(w1)
                       .unite(pred_coalition(gf, coalition, not_next)
                                  .subtract(pred_coalition(gf, opponents, wnext)))
                       .subtract(w2)
                       .reduce();
    return pred_time(gf, good, bad);
}

} // namespace tatl
