#ifndef TATL_ENCODING_HPP
#define TATL_ENCODING_HPP

#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

#include "tatl/formula.hpp"
#include "tatl/symbolic.hpp"

namespace tatl {

enum class EngineMode { Equal, Incl, Expand };

// Paired satisfied/unsatisfied federations of one vertex. The unsat side
// stays empty unless the dual encoding is enabled.
struct DualValue {
    Federation sat;
    Federation unsat;
};

// Flattened formula table entry; formulas are indexed so that vertex keys
// are cheap.
struct FormulaNode {
    FKind kind;
    std::vector<int> coalition;
    std::string label;           // Atom
    ConstraintConjunction cmps;  // Constraint, resolved against the frame
    int clock = -1;              // Freeze clock frame index
    std::vector<int> children;
    int depth = 0; // nested negations
};

// Lazily materialized vertex space of the TATL encoding, exposing the
// provider interface of EadgSolver.
class TatlProvider {
  public:
    using Value = DualValue;

    TatlProvider(const GameFrame& gf, const FormulaPtr& formula,
                 EngineMode mode, bool with_unsat);

    int root();
    const std::vector<int>& edges(int v);
    Value bottom(int v);
    Value evaluate(int v, const std::vector<Value>& in, const Value& cur);
    bool leq(const Value& a, const Value& b) const;
    bool monotonic(int v) const;
    int dist(int v) const;
    std::vector<int> candidates(int v) const;
    std::optional<std::function<Value(const Value&)>> derive(int small,
                                                             int big) const;
    bool ignore_all(int v, const Value& val) const;
    size_t generated() const { return verts_.size(); }

    bool with_unsat() const { return with_unsat_; }
    const GameFrame& game() const { return *gf_; }

    int vertex_location(int v) const { return verts_[v].loc; }
    const Dbm& vertex_zone(int v) const { return verts_[v].zone; }
    int vertex_formula(int v) const { return verts_[v].fidx; }
    const FormulaNode& node(int f) const { return nodes_[f]; }

  private:
    struct VInfo {
        int loc;
        Dbm zone;
        int fidx;
        std::vector<int> succs;
        std::vector<int> succ_actions; // aligned; -1 for formula children
        bool expanded = false;
    };

    int build_formula(const FormulaPtr& f);
    int intern_vertex(int loc, const Dbm& zone, int fidx);
    Dbm successor_zone(int edge, const Dbm& src) const;
    Federation eval_sat(const VInfo& vi, const FormulaNode& n,
                        const std::vector<Value>& in);
    Federation eval_unsat(const VInfo& vi, const FormulaNode& n,
                          const std::vector<Value>& in);
    StateSet wnext_set(const VInfo& vi, const std::vector<Value>& in,
                       bool unsat_side) const;
    StateSet loc_set(int loc, const Federation& fed) const;

    const GameFrame* gf_;
    EngineMode mode_;
    bool with_unsat_;
    std::vector<FormulaNode> nodes_;
    int root_formula_;
    std::vector<VInfo> verts_;
    std::unordered_map<std::string, int> memo_;
    std::map<std::pair<int, int>, std::vector<int>> buckets_;
    int root_vertex_ = -1;
};

} // namespace tatl

#endif
