#include "tatl/encoding.hpp"

#include <stdexcept>

namespace tatl {

namespace {

ConstraintConjunction resolve_cmps(const std::vector<NamedCmp>& cmps,
                                   const ClockFrame& frame) {
    ConstraintConjunction out;
    for (const NamedCmp& c : cmps) {
        int x = frame.find(c.clock);
        if (x < 0) throw std::runtime_error("unknown clock " + c.clock);
        switch (c.op) {
            case CmpOp::Lt: out.push_back(atom_lt(x, c.k)); break;
            case CmpOp::Le: out.push_back(atom_le(x, c.k)); break;
            case CmpOp::Ge: out.push_back(atom_ge(x, c.k)); break;
            case CmpOp::Gt: out.push_back(atom_gt(x, c.k)); break;
            case CmpOp::Eq:
                out.push_back(atom_le(x, c.k));
                out.push_back(atom_ge(x, c.k));
                break;
        }
    }
    return out;
}

} // namespace

TatlProvider::TatlProvider(const GameFrame& gf, const FormulaPtr& formula,
                           EngineMode mode, bool with_unsat)
    : gf_(&gf), mode_(mode), with_unsat_(with_unsat) {
    root_formula_ = build_formula(formula);
}

int TatlProvider::build_formula(const FormulaPtr& f) {
    FormulaNode n;
    n.kind = f->kind;
    n.coalition = f->coalition;
    switch (f->kind) {
        case FKind::Atom: n.label = f->name; break;
        case FKind::Constraint:
            n.cmps = resolve_cmps(f->cmps, *gf_->frame());
            break;
        case FKind::Freeze:
            n.clock = gf_->frame()->find(f->name);
            if (n.clock < 0)
                throw std::runtime_error("freeze clock missing from frame: " +
                                         f->name);
            break;
        default: break;
    }
    for (const FormulaPtr& c : f->children) n.children.push_back(build_formula(c));
    n.depth = (f->kind == FKind::Not ? 1 : 0);
    int best = 0;
    for (int c : n.children) best = std::max(best, nodes_[c].depth);
    n.depth += best;
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
}

int TatlProvider::intern_vertex(int loc, const Dbm& zone, int fidx) {
    Dbm z = zone;
    if (mode_ == EngineMode::Expand) z = gf_->universe(loc);
    std::string key = std::to_string(loc) + "/" + std::to_string(fidx) + "/" +
                      z.key();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int id = static_cast<int>(verts_.size());
    verts_.push_back(VInfo{loc, z, fidx, {}, {}, false});
    memo_.emplace(std::move(key), id);
    buckets_[{loc, fidx}].push_back(id);
    return id;
}

int TatlProvider::root() {
    if (root_vertex_ >= 0) return root_vertex_;
    int loc = gf_->model().init_location;
    Dbm z = Dbm::zero(gf_->frame()).up().intersect(gf_->universe(loc));
    root_vertex_ = intern_vertex(loc, z.normalized().up().intersect(gf_->universe(loc)), root_formula_);
    return root_vertex_;
}

Dbm TatlProvider::successor_zone(int edge, const Dbm& src) const {
    const Edge& e = gf_->model().edges[edge];
    Dbm z = src.intersect(gf_->guard(edge)).intersect(gf_->universe(e.src));
    z = z.reset(e.resets).intersect(gf_->universe(e.dst));
    if (z.is_empty()) return z;
    z = z.up().normalized().up().intersect(gf_->universe(e.dst));
    return z;
}

const std::vector<int>& TatlProvider::edges(int v) {
    if (verts_[v].expanded) return verts_[v].succs;
    verts_[v].expanded = true;
    // interning successors may reallocate verts_, so no reference into it
    // survives an add_child call
    const int loc = verts_[v].loc;
    const int fidx_v = verts_[v].fidx;
    const FormulaNode& n = nodes_[fidx_v];
    auto add_child = [&](int fidx) {
        int id = intern_vertex(loc, verts_[v].zone, fidx);
        verts_[v].succs.push_back(id);
        verts_[v].succ_actions.push_back(-1);
    };
    switch (n.kind) {
        case FKind::True:
        case FKind::False:
        case FKind::Atom:
        case FKind::Constraint:
            break;
        case FKind::Not:
            add_child(n.children[0]);
            break;
        case FKind::And:
        case FKind::Or:
            add_child(n.children[0]);
            add_child(n.children[1]);
            break;
        case FKind::Freeze: {
            Dbm z = verts_[v].zone.reset({n.clock});
            z = z.up().normalized().up().intersect(gf_->universe(loc));
            int id = intern_vertex(loc, z, n.children[0]);
            verts_[v].succs.push_back(id);
            verts_[v].succ_actions.push_back(-1);
            break;
        }
        case FKind::Next:
        case FKind::ForcedUntil:
        case FKind::PossibleUntil: {
            int childf = n.kind == FKind::Next ? n.children[0] : fidx_v;
            if (n.kind != FKind::Next) {
                add_child(n.children[0]);
                add_child(n.children[1]);
            }
            const Tmg& m = gf_->model();
            for (size_t e = 0; e < m.edges.size(); ++e) {
                if (m.edges[e].src != loc) continue;
                Dbm z = successor_zone(static_cast<int>(e), verts_[v].zone);
                if (z.is_empty()) continue; // never materialized
                int id = intern_vertex(m.edges[e].dst, z, childf);
                verts_[v].succs.push_back(id);
                verts_[v].succ_actions.push_back(static_cast<int>(e));
            }
            break;
        }
        default:
            throw std::runtime_error("sugar kind reached the encoding");
    }
    return verts_[v].succs;
}

TatlProvider::Value TatlProvider::bottom(int) {
    return {Federation::empty(gf_->frame()), Federation::empty(gf_->frame())};
}

StateSet TatlProvider::loc_set(int loc, const Federation& fed) const {
    StateSet s(*gf_);
    s.set(loc, fed);
    return s;
}

StateSet TatlProvider::wnext_set(const VInfo& vi, const std::vector<Value>& in,
                                 bool unsat_side) const {
    StateSet out(*gf_);
    for (size_t i = 0; i < vi.succs.size(); ++i) {
        int a = vi.succ_actions[i];
        if (a < 0) continue;
        int dst = gf_->model().edges[a].dst;
        const Federation& f = unsat_side ? in[i].unsat : in[i].sat;
        out.set(dst, out.at(dst).unite(f));
    }
    return out.reduce();
}

Federation TatlProvider::eval_sat(const VInfo& vi, const FormulaNode& n,
                                  const std::vector<Value>& in) {
    const Dbm& R = vi.zone;
    Federation fedR(R);
    switch (n.kind) {
        case FKind::True: return fedR;
        case FKind::False: return Federation::empty(gf_->frame());
        case FKind::Atom:
            return gf_->model().has_label(vi.loc, n.label)
                       ? fedR
                       : Federation::empty(gf_->frame());
        case FKind::Constraint: return fedR.intersect(n.cmps);
        case FKind::Not: return fedR.subtract(in[0].sat);
        case FKind::Or: return in[0].sat.unite(in[1].sat);
        case FKind::And: return in[0].sat.intersect(in[1].sat);
        case FKind::Freeze: {
            ConstraintConjunction z0{atom_le(n.clock, 0), atom_ge(n.clock, 0)};
            return in[0].sat.intersect(z0).free(n.clock).intersect(R);
        }
        case FKind::Next: {
            StateSet w = forceable(*gf_, n.coalition, loc_set(vi.loc, fedR),
                                   StateSet(*gf_), wnext_set(vi, in, false));
            return w.at(vi.loc);
        }
        case FKind::ForcedUntil: {
            StateSet w = forceable(*gf_, n.coalition,
                                   loc_set(vi.loc, in[0].sat),
                                   loc_set(vi.loc, in[1].sat),
                                   wnext_set(vi, in, false));
            return w.at(vi.loc);
        }
        case FKind::PossibleUntil: {
            StateSet w = unavoidable(*gf_, n.coalition,
                                     loc_set(vi.loc, in[0].sat),
                                     loc_set(vi.loc, in[1].sat),
                                     wnext_set(vi, in, false));
            return w.at(vi.loc);
        }
        default: throw std::runtime_error("sugar kind reached evaluation");
    }
}

Federation TatlProvider::eval_unsat(const VInfo& vi, const FormulaNode& n,
                                    const std::vector<Value>& in) {
    const Dbm& R = vi.zone;
    Federation fedR(R);
    switch (n.kind) {
        case FKind::True: return Federation::empty(gf_->frame());
        case FKind::False: return fedR;
        case FKind::Atom:
            return gf_->model().has_label(vi.loc, n.label)
                       ? Federation::empty(gf_->frame())
                       : fedR;
        case FKind::Constraint: return fedR.subtract(fedR.intersect(n.cmps));
        case FKind::Not: return in[0].sat.intersect(R);
        case FKind::Or: return in[0].unsat.intersect(in[1].unsat);
        case FKind::And: return in[0].unsat.unite(in[1].unsat);
        case FKind::Freeze: {
            ConstraintConjunction z0{atom_le(n.clock, 0), atom_ge(n.clock, 0)};
            return in[0].unsat.intersect(z0).free(n.clock).intersect(R);
        }
        case FKind::Next: {
            StateSet w = unavoidable(*gf_, n.coalition, loc_set(vi.loc, fedR),
                                     StateSet(*gf_), wnext_set(vi, in, true));
            return w.at(vi.loc);
        }
        case FKind::ForcedUntil: {
            // Dual encoding swaps the phi positions.
            StateSet w = unavoidable(*gf_, n.coalition,
                                     loc_set(vi.loc, in[1].unsat),
                                     loc_set(vi.loc, in[0].unsat),
                                     wnext_set(vi, in, true));
            return w.at(vi.loc);
        }
        case FKind::PossibleUntil: {
            StateSet w = forceable(*gf_, n.coalition,
                                   loc_set(vi.loc, in[1].unsat),
                                   loc_set(vi.loc, in[0].unsat),
                                   wnext_set(vi, in, true));
            return w.at(vi.loc);
        }
        default: throw std::runtime_error("sugar kind reached evaluation");
    }
}

TatlProvider::Value TatlProvider::evaluate(int v, const std::vector<Value>& in,
                                           const Value& cur) {
    const VInfo& vi = verts_[v];
    const FormulaNode& n = nodes_[vi.fidx];
    Federation fedR(vi.zone);
    Federation sat =
        eval_sat(vi, n, in).intersect(vi.zone).normalized().intersect(vi.zone);
    Federation unsat = Federation::empty(gf_->frame());
    if (with_unsat_)
        unsat = eval_unsat(vi, n, in)
                    .intersect(vi.zone)
                    .normalized()
                    .intersect(vi.zone);
    if (n.kind != FKind::Not) {
        // Keep monotone trajectories even under widening artifacts.
        sat = sat.unite(cur.sat);
        if (with_unsat_) unsat = unsat.unite(cur.unsat);
    }
    return {sat.reduce(), unsat.reduce()};
}

bool TatlProvider::leq(const Value& a, const Value& b) const {
    if (!a.sat.subset_eq(b.sat)) return false;
    if (with_unsat_ && !a.unsat.subset_eq(b.unsat)) return false;
    return true;
}

bool TatlProvider::monotonic(int v) const {
    return nodes_[verts_[v].fidx].kind != FKind::Not;
}

int TatlProvider::dist(int v) const { return nodes_[verts_[v].fidx].depth; }

std::vector<int> TatlProvider::candidates(int v) const {
    auto it = buckets_.find({verts_[v].loc, verts_[v].fidx});
    if (it == buckets_.end()) return {};
    return it->second;
}

std::optional<std::function<TatlProvider::Value(const TatlProvider::Value&)>>
TatlProvider::derive(int small, int big) const {
    const VInfo& a = verts_[small];
    const VInfo& b = verts_[big];
    if (a.loc != b.loc || a.fidx != b.fidx) return std::nullopt;
    if (!a.zone.subset_eq(b.zone)) return std::nullopt;
    Dbm z = a.zone;
    return [z](const Value& w) -> Value {
        return {w.sat.intersect(z).reduce(), w.unsat.intersect(z).reduce()};
    };
}

bool TatlProvider::ignore_all(int v, const Value& val) const {
    Federation fedR(verts_[v].zone);
    if (val.sat.same_set(fedR)) return true;
    if (with_unsat_ && val.sat.unite(val.unsat).same_set(fedR)) return true;
    return false;
}

} // namespace tatl
