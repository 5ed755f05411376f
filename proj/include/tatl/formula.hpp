#ifndef TATL_FORMULA_HPP
#define TATL_FORMULA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tatl/model.hpp"

namespace tatl {

// Core formula kinds, plus surface sugar (F/G/bounded operators) that
// desugaring removes. Coalitions are sorted player-id sets.
enum class FKind {
    True,
    False,
    Atom,       // location label
    Constraint, // conjunction of clock comparisons (diagonals allowed)
    Not,
    And,
    Or,
    Next,          // <<S>> X f
    ForcedUntil,   // <<S>> (f U g)
    PossibleUntil, // [[S]] (f U g)
    Freeze,        // z.f
    // Surface-only kinds, removed by desugar():
    SugarEventually, // <<S>>/[[S]] F f, optional bound
    SugarGlobally,   // <<S>>/[[S]] G f
    SugarUntil,      // <<S>>/[[S]> (f U<=k g) with a bound
    SugarNext,       // [[S]] X f
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Comparison of a named clock (model or formula clock) with a constant,
// or a clock difference; resolved against a frame when encoding.
struct NamedCmp {
    std::string clock;
    CmpOp op;
    int64_t k;
};

struct Formula {
    FKind kind;
    std::vector<int> coalition;  // player ids, sorted
    bool possible = false;       // surface [[S]] variant (sugar kinds)
    std::string name;            // Atom label or Freeze clock
    std::vector<NamedCmp> cmps;  // Constraint conjuncts
    CmpOp bound_op = CmpOp::Lt;  // sugar time bound
    int64_t bound_k = 0;
    bool has_bound = false;
    std::vector<FormulaPtr> children;

    std::string str() const;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(const std::string& label);
FormulaPtr f_cmp(std::vector<NamedCmp> cmps);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_next(std::vector<int> coalition, FormulaPtr a);
FormulaPtr f_forced_until(std::vector<int> coalition, FormulaPtr a, FormulaPtr b);
FormulaPtr f_possible_until(std::vector<int> coalition, FormulaPtr a, FormulaPtr b);
FormulaPtr f_freeze(const std::string& clock, FormulaPtr a);

struct Query {
    std::string name;
    FormulaPtr formula;
    std::optional<bool> expected;
};

// One query per line: "name: formula", optionally "=> true|false".
std::vector<Query> parse_queries(const std::string& text, const Tmg& model);
FormulaPtr parse_formula(const std::string& text, const Tmg& model);

// Rewrites sugar kinds into the core kinds, introducing fresh formula
// clocks _z0, _z1, ... for time bounds.
FormulaPtr desugar(FormulaPtr f);

// De Morgan over And/Or, double negation elimination and the Next dual;
// negations stop above the until kinds and freeze.
FormulaPtr push_negations(FormulaPtr f);

// Greatest number of nested Not kinds along any path.
int negation_depth(const FormulaPtr& f);

// Formula clocks in first-occurrence order, each with the largest constant
// it is compared against.
std::vector<std::pair<std::string, int64_t>> formula_clocks(const FormulaPtr& f,
                                                            const Tmg& model);

// Frame over the model clocks followed by the formula clocks of f.
FramePtr build_frame(const Tmg& model, const FormulaPtr& f);

} // namespace tatl

#endif
