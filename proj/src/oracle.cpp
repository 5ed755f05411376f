#include "tatl/oracle.hpp"

#include <algorithm>
#include <functional>

namespace tatl {

namespace {

bool in_coalition(const std::vector<int>& coalition, int player) {
    return std::binary_search(coalition.begin(), coalition.end(), player);
}

} // namespace

RegionGraph::RegionGraph(const GameFrame& gf) : gf_(&gf) {
    const Tmg& m = gf.model();
    const ClockFrame& fr = *gf.frame();
    size_t n = fr.size();
    int64_t M = m.ceiling;
    if (n > 3 || M > 8 || m.locations.size() > 40)
        throw OracleInfeasible("model too large for region enumeration");
    int above = static_cast<int>(M) + 1;

    // Enumerate canonical regions per location: integer parts, fraction
    // ranks (contiguous 1..m), the above marker for formula clocks past
    // the ceiling. Keep those whose representative lies in the universe.
    std::vector<int> ip(n), frac(n);
    std::function<void(int, size_t)> emit = [&](int loc, size_t i) {
        if (i == n) {
            std::vector<char> used(n + 1, 0);
            int maxr = 0;
            for (size_t c = 0; c < n; ++c) {
                if (frac[c] < 0 || frac[c] > static_cast<int>(n)) return;
                used[frac[c]] = 1;
                maxr = std::max(maxr, frac[c]);
            }
            for (int r = 1; r <= maxr; ++r)
                if (!used[r]) return;
            Region reg{loc, ip, frac};
            // representative must satisfy the location universe
            Valuation v(n);
            for (size_t c = 0; c < n; ++c)
                v[c] = Rational(ip[c]) + Rational(frac[c], maxr + 1);
            if (!gf.universe(loc).contains(v)) return;
            index_[reg] = static_cast<int>(regions_.size());
            regions_.push_back(std::move(reg));
            return;
        }
        if (fr.is_formula_clock(i)) {
            ip[i] = above;
            frac[i] = 0;
            emit(loc, i + 1);
        }
        for (int p = 0; p <= M; ++p) {
            ip[i] = p;
            for (int r = 0; r <= static_cast<int>(n); ++r) {
                frac[i] = r;
                emit(loc, i + 1);
            }
        }
    };
    for (size_t l = 0; l < m.locations.size(); ++l)
        emit(static_cast<int>(l), 0);

    // Delay structure.
    delay_.resize(regions_.size());
    for (size_t id = 0; id < regions_.size(); ++id) {
        const Region& r = regions_[id];
        std::vector<size_t> nonabove, zeros;
        for (size_t c = 0; c < n; ++c) {
            if (r.ip[c] == above && fr.is_formula_clock(c)) continue;
            nonabove.push_back(c);
            if (r.frac[c] == 0) zeros.push_back(c);
        }
        if (nonabove.empty()) {
            delay_[id] = {DelayKind::Absorbing, static_cast<int>(id)};
            continue;
        }
        Region cand = r;
        if (!zeros.empty()) {
            // integer-valued clocks enter the next open interval, below
            // every current positive fraction
            for (size_t c : nonabove)
                if (cand.frac[c] > 0) cand.frac[c] += 1;
            for (size_t c : zeros)
                cand.frac[c] = 1;
        } else {
            // the largest fractions reach the next integer
            int maxr = 0;
            for (size_t c : nonabove)
                maxr = std::max(maxr, cand.frac[c]);
            for (size_t c : nonabove)
                if (cand.frac[c] == maxr) {
                    cand.ip[c] += 1;
                    cand.frac[c] = 0;
                }
        }
        // formula clocks past the ceiling collapse into the above region
        for (size_t c = 0; c < n; ++c)
            if (fr.is_formula_clock(c) &&
                (cand.ip[c] > static_cast<int>(M) ||
                 (cand.ip[c] == static_cast<int>(M) && cand.frac[c] > 0))) {
                cand.ip[c] = above;
                cand.frac[c] = 0;
            }
        // compress fraction ranks to 1..m
        std::vector<int> ranks;
        for (size_t c = 0; c < n; ++c)
            if (!(cand.ip[c] == above && fr.is_formula_clock(c)) &&
                cand.frac[c] > 0)
                ranks.push_back(cand.frac[c]);
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        for (size_t c = 0; c < n; ++c)
            if (!(cand.ip[c] == above && fr.is_formula_clock(c)) &&
                cand.frac[c] > 0)
                cand.frac[c] =
                    static_cast<int>(std::lower_bound(ranks.begin(), ranks.end(),
                                                      cand.frac[c]) -
                                     ranks.begin()) +
                    1;
        auto it = index_.find(cand);
        if (it == index_.end())
            delay_[id] = {DelayKind::Blocked, -1};
        else if (it->second == static_cast<int>(id))
            delay_[id] = {DelayKind::Absorbing, static_cast<int>(id)};
        else
            delay_[id] = {DelayKind::Next, it->second};
    }

    // Timelocks: some declared invariant upper bound is tight. The ceiling
    // does not count: a region at the ceiling stands in for all states
    // above it, where time diverges.
    timelocked_.assign(regions_.size(), 0);
    for (size_t id = 0; id < regions_.size(); ++id) {
        const Region& r = regions_[id];
        for (size_t c = 0; c < fr.model_count(); ++c) {
            int64_t up = -1;
            for (const ClockCmp& cc : m.locations[r.loc].invariant)
                if (cc.clock == static_cast<int>(c) &&
                    (cc.op == CmpOp::Le || cc.op == CmpOp::Eq))
                    up = up < 0 ? cc.k : std::min(up, cc.k);
            if (up >= 0 && r.frac[c] == 0 && r.ip[c] == up)
                timelocked_[id] = 1;
        }
    }

    // A region blocked only by the ceiling (not by an invariant) absorbs
    // delay instead: the cap identifies it with the unbounded time above.
    for (size_t id = 0; id < regions_.size(); ++id)
        if (delay_[id].first == DelayKind::Blocked && !timelocked_[id])
            delay_[id] = {DelayKind::Absorbing, static_cast<int>(id)};

    // Discrete successors.
    discrete_.resize(regions_.size());
    for (size_t id = 0; id < regions_.size(); ++id) {
        const Region& r = regions_[id];
        ConcreteState s{r.loc, representative(static_cast<int>(id))};
        for (size_t e = 0; e < m.edges.size(); ++e) {
            if (m.edges[e].src != r.loc) continue;
            if (!action_enabled(m, static_cast<int>(e), s)) continue;
            auto t = discrete_step(m, static_cast<int>(e), s);
            discrete_[id].push_back(
                {static_cast<int>(e), region_of(t->loc, t->val)});
        }
    }
}

int RegionGraph::id_of(const Region& r) const {
    auto it = index_.find(r);
    if (it == index_.end())
        throw std::out_of_range("region not in graph");
    return it->second;
}

int RegionGraph::region_of(int loc, const Valuation& v) const {
    const ClockFrame& fr = *gf_->frame();
    size_t n = fr.size();
    int64_t M = gf_->model().ceiling;
    Region r;
    r.loc = loc;
    r.ip.resize(n);
    r.frac.assign(n, 0);
    std::vector<Rational> fparts(n, Rational(0));
    for (size_t c = 0; c < n; ++c) {
        if (fr.is_formula_clock(c) && v[c] > Rational(M)) {
            r.ip[c] = static_cast<int>(M) + 1;
            continue;
        }
        int64_t f = v[c].floor();
        r.ip[c] = static_cast<int>(f);
        fparts[c] = v[c] - Rational(f);
    }
    std::vector<Rational> pos;
    for (size_t c = 0; c < n; ++c)
        if (!(fr.is_formula_clock(c) && r.ip[c] == static_cast<int>(M) + 1) &&
            fparts[c] != Rational(0))
            pos.push_back(fparts[c]);
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    for (size_t c = 0; c < n; ++c) {
        if (fr.is_formula_clock(c) && r.ip[c] == static_cast<int>(M) + 1)
            continue;
        if (fparts[c] != Rational(0))
            r.frac[c] = static_cast<int>(std::lower_bound(pos.begin(), pos.end(),
                                                          fparts[c]) -
                                         pos.begin()) +
                        1;
    }
    return id_of(r);
}

Valuation RegionGraph::representative(int id) const {
    const Region& r = regions_[id];
    size_t n = r.ip.size();
    int maxr = 0;
    for (size_t c = 0; c < n; ++c)
        maxr = std::max(maxr, r.frac[c]);
    Valuation v(n);
    for (size_t c = 0; c < n; ++c)
        v[c] = Rational(r.ip[c]) + Rational(r.frac[c], maxr + 1);
    return v;
}

int RegionGraph::initial_region() const {
    Valuation zeros(gf_->frame()->size(), Rational(0));
    return region_of(gf_->model().init_location, zeros);
}

RSet rset_none(const RegionGraph& rg) { return RSet(rg.count(), 0); }
RSet rset_all(const RegionGraph& rg) { return RSet(rg.count(), 1); }

RSet rset_complement(const RegionGraph& rg, const RSet& w) {
    RSet r(rg.count());
    for (size_t i = 0; i < w.size(); ++i)
        r[i] = !w[i];
    return r;
}

RSet rset_union(const RSet& a, const RSet& b) {
    RSet r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] || b[i];
    return r;
}

RSet rset_intersect(const RSet& a, const RSet& b) {
    RSet r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] && b[i];
    return r;
}

RSet rset_subtract(const RSet& a, const RSet& b) {
    RSet r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] && !b[i];
    return r;
}

bool rset_eq(const RSet& a, const RSet& b) { return a == b; }

Dbm region_zone(const RegionGraph& rg, int id) {
    const auto& r = rg.region(id);
    const ClockFrame& fr = *rg.game().frame();
    int64_t M = rg.game().model().ceiling;
    int above = static_cast<int>(M) + 1;
    size_t n = r.ip.size();
    auto is_above = [&](size_t c) {
        return fr.is_formula_clock(c) && r.ip[c] == above;
    };
    ConstraintConjunction cs;
    for (size_t c = 0; c < n; ++c) {
        int ci = static_cast<int>(c);
        if (is_above(c)) {
            cs.push_back(atom_gt(ci, M));
        } else if (r.frac[c] == 0) {
            cs.push_back(atom_le(ci, r.ip[c]));
            cs.push_back(atom_ge(ci, r.ip[c]));
        } else {
            cs.push_back(atom_gt(ci, r.ip[c]));
            cs.push_back(atom_lt(ci, r.ip[c] + 1));
        }
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (is_above(i) || is_above(j)) continue;
            if (r.frac[i] == 0 || r.frac[j] == 0) continue;
            int64_t d = r.ip[i] - r.ip[j];
            if (r.frac[i] == r.frac[j]) {
                cs.push_back({static_cast<int>(i), static_cast<int>(j),
                              Bound::weak(d)});
                cs.push_back({static_cast<int>(j), static_cast<int>(i),
                              Bound::weak(-d)});
            } else if (r.frac[i] < r.frac[j]) {
                cs.push_back({static_cast<int>(i), static_cast<int>(j),
                              Bound::strict(d)});
                cs.push_back({static_cast<int>(j), static_cast<int>(i),
                              Bound::strict(1 - d)});
            } else {
                cs.push_back({static_cast<int>(j), static_cast<int>(i),
                              Bound::strict(-d)});
                cs.push_back({static_cast<int>(i), static_cast<int>(j),
                              Bound::strict(d + 1)});
            }
        }
    return Dbm::from_constraints(rg.game().frame(), cs);
}

StateSet rset_to_stateset(const RegionGraph& rg, const RSet& w) {
    StateSet s(rg.game());
    for (size_t id = 0; id < w.size(); ++id)
        if (w[id]) s.add(rg.region(static_cast<int>(id)).loc,
                         region_zone(rg, static_cast<int>(id)));
    return s;
}

RSet stateset_to_rset(const RegionGraph& rg, const StateSet& w) {
    RSet r(rg.count());
    for (size_t id = 0; id < rg.count(); ++id)
        r[id] = w.contains(rg.region(static_cast<int>(id)).loc,
                           rg.representative(static_cast<int>(id)));
    return r;
}

bool region_stable(const RegionGraph& rg, const StateSet& w) {
    for (size_t id = 0; id < rg.count(); ++id) {
        Federation fed = w.at(rg.region(static_cast<int>(id)).loc);
        Dbm z = region_zone(rg, static_cast<int>(id));
        Federation fz(z);
        if (fz.subset_eq(fed)) continue;
        if (!fed.intersect(z).is_empty()) return false;
    }
    return true;
}

RSet region_pred_action(const RegionGraph& rg, int edge, const RSet& w) {
    RSet out = rset_none(rg);
    for (size_t id = 0; id < rg.count(); ++id)
        for (auto [e, s] : rg.discrete(static_cast<int>(id)))
            if (e == edge && w[s]) out[id] = 1;
    return out;
}

RSet region_post_action(const RegionGraph& rg, int edge, const RSet& w) {
    RSet out = rset_none(rg);
    for (size_t id = 0; id < rg.count(); ++id)
        if (w[id])
            for (auto [e, s] : rg.discrete(static_cast<int>(id)))
                if (e == edge) out[s] = 1;
    return out;
}

RSet region_pred_coalition(const RegionGraph& rg,
                           const std::vector<int>& coalition, const RSet& w) {
    RSet out = rset_none(rg);
    const Tmg& m = rg.game().model();
    for (size_t id = 0; id < rg.count(); ++id)
        for (auto [e, s] : rg.discrete(static_cast<int>(id)))
            if (in_coalition(coalition, m.edges[e].player) && w[s]) out[id] = 1;
    return out;
}

RSet region_timelocked(const RegionGraph& rg, const RSet& w) {
    RSet out = rset_none(rg);
    for (size_t id = 0; id < rg.count(); ++id)
        out[id] = w[id] && rg.is_timelocked(static_cast<int>(id));
    return out;
}

RSet region_pred_time(const RegionGraph& rg, const RSet& good, const RSet& bad) {
    RSet out = rset_none(rg);
    for (size_t id = 0; id < rg.count(); ++id) {
        int cur = static_cast<int>(id);
        while (true) {
            if (bad[cur]) break;
            if (good[cur]) {
                out[id] = 1;
                break;
            }
            if (rg.delay_kind(cur) != RegionGraph::DelayKind::Next) break;
            cur = rg.delay_next(cur);
        }
    }
    return out;
}

RSet region_forceable(const RegionGraph& rg, const std::vector<int>& coalition,
                      const RSet& w1, const RSet& w2, const RSet& wnext) {
    const Tmg& m = rg.game().model();
    // holds throughout the delay: in w2, or in w1 with every opponent
    // action landing in wnext
    auto P = [&](int r) {
        if (w2[r]) return true;
        if (!w1[r]) return false;
        for (auto [e, s] : rg.discrete(r))
            if (!in_coalition(coalition, m.edges[e].player) && !wnext[s])
                return false;
        return true;
    };
    // holds at the endpoint: already in w2, some own action reaches
    // wnext, or time is stuck, some opponent action reaches wnext and no
    // action of anyone leaves it
    auto A = [&](int r) {
        if (w2[r]) return true;
        for (auto [e, s] : rg.discrete(r))
            if (in_coalition(coalition, m.edges[e].player) && wnext[s])
                return true;
        if (rg.is_timelocked(r)) {
            bool opp = false, leak = false;
            for (auto [e, s] : rg.discrete(r)) {
                if (!wnext[s]) leak = true;
                else if (!in_coalition(coalition, m.edges[e].player))
                    opp = true;
            }
            if (opp && !leak) return true;
        }
        return false;
    };
    RSet out = rset_none(rg);
    for (size_t id = 0; id < rg.count(); ++id) {
        int cur = static_cast<int>(id);
        while (true) {
            if (!P(cur)) break;
            if (A(cur)) {
                out[id] = 1;
                break;
            }
            if (rg.delay_kind(cur) != RegionGraph::DelayKind::Next) break;
            cur = rg.delay_next(cur);
        }
    }
    return out;
}

RSet region_unavoidable(const RegionGraph& rg,
                        const std::vector<int>& coalition, const RSet& w1,
                        const RSet& w2, const RSet& wnext) {
    const Tmg& m = rg.game().model();
    // holds throughout the delay: in w2, or in w1 where the coalition
    // cannot slip out, either because every own action lands in wnext or
    // because an opponent action into wnext races any escape attempt
    auto P = [&](int r) {
        if (w2[r]) return true;
        if (!w1[r]) return false;
        bool own_out = false, opp_in = false;
        for (auto [e, s] : rg.discrete(r)) {
            bool own = in_coalition(coalition, m.edges[e].player);
            if (own && !wnext[s]) own_out = true;
            if (!own && wnext[s]) opp_in = true;
        }
        return !own_out || opp_in;
    };
    // holds at the endpoint: in w2, some opponent action reaches wnext, or
    // time is stuck and some own action reaches wnext
    auto A = [&](int r) {
        if (w2[r]) return true;
        for (auto [e, s] : rg.discrete(r)) {
            bool own = in_coalition(coalition, m.edges[e].player);
            if (!own && wnext[s]) return true;
            if (own && wnext[s] && rg.is_timelocked(r)) return true;
        }
        return false;
    };
    RSet out = rset_none(rg);
    for (size_t id = 0; id < rg.count(); ++id) {
        int cur = static_cast<int>(id);
        while (true) {
            if (!P(cur)) break;
            if (A(cur)) {
                out[id] = 1;
                break;
            }
            if (rg.delay_kind(cur) != RegionGraph::DelayKind::Next) break;
            cur = rg.delay_next(cur);
        }
    }
    return out;
}

RSet region_sat(const RegionGraph& rg, const FormulaPtr& f) {
    const ClockFrame& fr = *rg.game().frame();
    switch (f->kind) {
    case FKind::True:
        return rset_all(rg);
    case FKind::False:
        return rset_none(rg);
    case FKind::Atom: {
        RSet out = rset_none(rg);
        for (size_t id = 0; id < rg.count(); ++id)
            out[id] = rg.game().model().has_label(
                rg.region(static_cast<int>(id)).loc, f->name);
        return out;
    }
    case FKind::Constraint: {
        RSet out = rset_all(rg);
        for (size_t id = 0; id < rg.count(); ++id) {
            Valuation v = rg.representative(static_cast<int>(id));
            for (const NamedCmp& c : f->cmps) {
                int ci = fr.find(c.clock);
                if (ci < 0) throw std::runtime_error("unknown clock " + c.clock);
                Rational x = v[ci], k(c.k);
                bool ok = c.op == CmpOp::Lt   ? x < k
                          : c.op == CmpOp::Le ? x <= k
                          : c.op == CmpOp::Eq ? x == k
                          : c.op == CmpOp::Ge ? x >= k
                                              : x > k;
                if (!ok) {
                    out[id] = 0;
                    break;
                }
            }
        }
        return out;
    }
    case FKind::Not:
        return rset_complement(rg, region_sat(rg, f->children[0]));
    case FKind::And:
        return rset_intersect(region_sat(rg, f->children[0]),
                              region_sat(rg, f->children[1]));
    case FKind::Or:
        return rset_union(region_sat(rg, f->children[0]),
                          region_sat(rg, f->children[1]));
    case FKind::Next:
        return region_forceable(rg, f->coalition, rset_all(rg), rset_none(rg),
                                region_sat(rg, f->children[0]));
    case FKind::ForcedUntil:
    case FKind::PossibleUntil: {
        RSet s1 = region_sat(rg, f->children[0]);
        RSet s2 = region_sat(rg, f->children[1]);
        RSet x = rset_none(rg);
        while (true) {
            RSet nx = f->kind == FKind::ForcedUntil
                          ? region_forceable(rg, f->coalition, s1, s2, x)
                          : region_unavoidable(rg, f->coalition, s1, s2, x);
            if (rset_eq(nx, x)) return x;
            x = std::move(nx);
        }
    }
    case FKind::Freeze: {
        RSet child = region_sat(rg, f->children[0]);
        int z = fr.find(f->name);
        if (z < 0) throw std::runtime_error("unknown freeze clock " + f->name);
        RSet out = rset_none(rg);
        for (size_t id = 0; id < rg.count(); ++id) {
            Valuation v = rg.representative(static_cast<int>(id));
            v[z] = Rational(0);
            out[id] =
                child[rg.region_of(rg.region(static_cast<int>(id)).loc, v)];
        }
        return out;
    }
    default:
        throw std::logic_error("region_sat: formula not desugared");
    }
}

bool region_model_check(const GameFrame& gf, const FormulaPtr& f) {
    RegionGraph rg(gf);
    RSet sat = region_sat(rg, f);
    return sat[rg.initial_region()];
}

bool check_strategy_witness(const RegionGraph& rg,
                            const std::vector<int>& coalition,
                            const RegionProfile& profile, const RSet& phi1,
                            const RSet& phi2) {
    const Tmg& m = rg.game().model();
    // successor relation of the outcome graph under the profile
    std::vector<std::vector<int>> succ(rg.count());
    for (size_t id = 0; id < rg.count(); ++id) {
        int r = static_cast<int>(id);
        bool all_wait = true;
        for (int p : coalition) {
            auto it = profile.find({p, r});
            if (it == profile.end()) continue;
            all_wait = false;
            // prescribed action must belong to the player and be enabled
            if (m.edges[it->second].player != p) return false;
            bool enabled = false;
            for (auto [e, s] : rg.discrete(r))
                if (e == it->second) enabled = true;
            if (!enabled) return false;
        }
        if (all_wait) {
            if (rg.delay_kind(r) == RegionGraph::DelayKind::Next)
                succ[id].push_back(rg.delay_next(r));
            else if (rg.delay_kind(r) == RegionGraph::DelayKind::Absorbing)
                succ[id].push_back(r);
        }
        for (auto [e, s] : rg.discrete(r)) {
            int p = m.edges[e].player;
            if (!in_coalition(coalition, p)) {
                succ[id].push_back(s);
            } else {
                auto it = profile.find({p, r});
                if (it != profile.end() && it->second == e)
                    succ[id].push_back(s);
            }
        }
    }
    // every maximal outcome run must realize phi1 U phi2
    RSet z = phi2;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t id = 0; id < rg.count(); ++id) {
            if (z[id] || !phi1[id] || succ[id].empty()) continue;
            bool all = true;
            for (int s : succ[id])
                if (!z[s]) all = false;
            if (all) {
                z[id] = 1;
                changed = true;
            }
        }
    }
    return z[rg.initial_region()];
}

} // namespace tatl
