#ifndef TATL_MODEL_HPP
#define TATL_MODEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tatl/frame.hpp"

namespace tatl {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", col " +
                             std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

// One "clock op constant" conjunct as written in a model file.
struct ClockCmp {
    int clock;
    CmpOp op;
    int64_t k;
};

struct Location {
    std::string name;
    std::vector<ClockCmp> invariant;
    std::vector<std::string> labels;
    bool initial = false;
};

struct Edge {
    std::string action;
    int src;
    int dst;
    int player;
    std::vector<ClockCmp> guard;
    std::vector<int> resets; // model clock indices
};

// A timed multiplayer game: a timed automaton whose actions are
// partitioned among the players. Actions are edge-unique, so an action is
// identified with its edge index.
struct Tmg {
    std::vector<std::string> clocks;
    std::vector<std::string> players;
    int64_t ceiling = 0;
    std::vector<Location> locations;
    std::vector<Edge> edges;
    int init_location = -1;

    int find_location(const std::string& n) const {
        for (size_t i = 0; i < locations.size(); ++i)
            if (locations[i].name == n) return static_cast<int>(i);
        return -1;
    }
    int find_player(const std::string& n) const {
        for (size_t i = 0; i < players.size(); ++i)
            if (players[i] == n) return static_cast<int>(i);
        return -1;
    }
    int find_clock(const std::string& n) const {
        for (size_t i = 0; i < clocks.size(); ++i)
            if (clocks[i] == n) return static_cast<int>(i);
        return -1;
    }
    bool has_label(int loc, const std::string& l) const {
        for (const auto& s : locations[loc].labels)
            if (s == l) return true;
        return false;
    }
};

Tmg parse_model(const std::string& text);
std::string print_model(const Tmg& m);

// Conversion of surface comparisons to difference constraints over a frame
// whose first clocks are the model clocks.
ConstraintConjunction to_constraints(const std::vector<ClockCmp>& cmps);

// Concrete semantics over states <location, valuation>; valuations range
// over all frame clocks. The global ceiling is an implicit invariant on
// every model clock.
struct ConcreteState {
    int loc;
    Valuation val;
};

bool invariant_holds(const Tmg& m, const ConcreteState& s);
bool guard_holds(const Tmg& m, int edge, const ConcreteState& s);
bool action_enabled(const Tmg& m, int edge, const ConcreteState& s);
std::optional<ConcreteState> discrete_step(const Tmg& m, int edge,
                                           const ConcreteState& s);
std::optional<ConcreteState> delay_step(const Tmg& m, const ConcreteState& s,
                                        Rational delta);
std::vector<int> enabled_actions(const Tmg& m, const ConcreteState& s);

} // namespace tatl

#endif
