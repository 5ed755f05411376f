#include <doctest.h>

#include "helpers.hpp"
#include "tatl/model.hpp"

using namespace tatl;
using testutil::read_file;

TEST_CASE("parses the relay game") {
    Tmg m = parse_model(read_file("relay.model"));
    CHECK(m.clocks == std::vector<std::string>{"x"});
    CHECK(m.players == std::vector<std::string>{"I", "II", "III"});
    CHECK(m.ceiling == 6);
    REQUIRE(m.locations.size() == 5);
    REQUIRE(m.edges.size() == 6);
    CHECK(m.init_location == m.find_location("A"));
    CHECK(m.locations[m.find_location("A")].invariant.size() == 1);
    CHECK(m.locations[m.find_location("A")].invariant[0].k == 4);
    CHECK(m.locations[m.find_location("C")].labels ==
          std::vector<std::string>{"c"});
    CHECK(m.has_label(m.find_location("Goal"), "goal"));
    CHECK(!m.has_label(m.find_location("B"), "goal"));
    const Edge& a3 = m.edges[2];
    CHECK(a3.action == "a3");
    CHECK(a3.src == m.find_location("B"));
    CHECK(a3.dst == m.find_location("Goal"));
    CHECK(a3.player == m.find_player("III"));
    REQUIRE(a3.guard.size() == 1);
    CHECK(a3.guard[0].op == CmpOp::Le);
    CHECK(a3.guard[0].k == 2);
    CHECK(m.edges[0].guard.empty());
    CHECK(m.edges[0].resets.empty());
}

TEST_CASE("print and parse round-trip") {
    Tmg m = parse_model(read_file("relay.model"));
    Tmg m2 = parse_model(print_model(m));
    CHECK(print_model(m2) == print_model(m));
    CHECK(m2.clocks == m.clocks);
    CHECK(m2.ceiling == m.ceiling);
    CHECK(m2.locations.size() == m.locations.size());
    CHECK(m2.edges.size() == m.edges.size());
    CHECK(m2.init_location == m.init_location);
}

TEST_CASE("resets and guards with conjunctions parse") {
    Tmg m = parse_model(
        "system { clocks: x, y; players: P; ceiling: 9; }\n"
        "location L { init; }\n"
        "edge a: L -> L { player: P; guard: x >= 2 && y < 5; reset: y, x; }\n");
    REQUIRE(m.edges.size() == 1);
    CHECK(m.edges[0].guard.size() == 2);
    CHECK(m.edges[0].guard[1].op == CmpOp::Lt);
    CHECK(m.edges[0].resets == std::vector<int>{1, 0});
}

TEST_CASE("rejects malformed models") {
    auto bad = [](const std::string& text, const std::string& what) {
        try {
            parse_model(text);
            FAIL("accepted: ", what);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(what) != std::string::npos);
            CHECK(e.line >= 1);
        }
    };
    std::string sys = "system { clocks: x; players: P; ceiling: 3; }\n";
    std::string loc = "location L { init; }\n";
    bad(loc, "missing system block");
    bad(sys + sys + loc, "duplicate system block");
    bad("system { clocks: x, x; players: P; ceiling: 3; }\n" + loc,
        "duplicate clock");
    bad("system { clocks: x; players: P, P; ceiling: 3; }\n" + loc,
        "duplicate player");
    bad("system { clocks: x; players: P; }\n" + loc, "ceiling");
    bad("system { clocks: x; ceiling: 3; }\n" + loc, "no players");
    bad(sys + loc + "location L { }\n", "duplicate location");
    bad(sys + "location L { }\n", "exactly one init");
    bad(sys + loc + "location M { init; }\n", "exactly one init");
    bad(sys + "location L { init; invariant: x < 2; }\n",
        "strict upper bounds");
    bad(sys + "location L { init; invariant: y <= 2; }\n", "unknown clock");
    bad(sys + "location L { init; invariant: x <= 9; }\n",
        "invariant constant exceeds ceiling");
    bad(sys + loc + "edge a: L -> M { player: P; }\n", "unknown location");
    bad(sys + loc + "edge a: L -> L { player: Q; }\n", "unknown player");
    bad(sys + loc + "edge a: L -> L { }\n", "no player");
    bad(sys + loc + "edge a: L -> L { player: P; reset: y; }\n",
        "unknown clock");
    bad(sys + loc + "edge a: L -> L { player: P; guard: x >= 7; }\n",
        "guard constant exceeds ceiling");
    bad(sys + loc + "edge a: L -> L { player: P; }\n" +
            "edge a: L -> L { player: P; }\n",
        "duplicate action");
    bad(sys + loc + "edge a: L -> L { player: P; speed: 3; }\n",
        "unknown edge field");
    bad(sys + "location L { init; color: red; }\n", "unknown location field");
    bad(sys + loc + "edge a: L -> L { player: P; guard: x == ; }\n",
        "expected integer constant");
}

TEST_CASE("concrete steps on the relay game") {
    Tmg m = parse_model(read_file("relay.model"));
    int A = m.find_location("A"), B = m.find_location("B");
    int G = m.find_location("Goal");
    // Edge index == position in the file.
    int a1 = 0, a2 = 1, a3 = 2;

    ConcreteState s{A, {Rational(0)}};
    CHECK(invariant_holds(m, s));
    CHECK(action_enabled(m, a1, s));
    CHECK(!action_enabled(m, a2, s)); // wrong source location
    auto t = discrete_step(m, a1, s);
    REQUIRE(t);
    CHECK(t->loc == B);
    CHECK(t->val[0] == Rational(0));

    // a3 requires x <= 2.
    ConcreteState late{B, {Rational(4)}};
    CHECK(!action_enabled(m, a3, late));
    CHECK(!discrete_step(m, a3, late));
    ConcreteState early{B, {Rational(2)}};
    auto g = discrete_step(m, a3, early);
    REQUIRE(g);
    CHECK(g->loc == G);

    // Delays respect the invariant and the ceiling.
    auto d1 = delay_step(m, s, Rational(4));
    REQUIRE(d1);
    CHECK(d1->val[0] == Rational(4));
    CHECK(!delay_step(m, s, Rational(9, 2))); // leaves A's invariant
    ConcreteState goal{G, {Rational(5)}};
    CHECK(delay_step(m, goal, Rational(1)));
    CHECK(!delay_step(m, goal, Rational(3, 2))); // past the ceiling

    // Delay additivity where defined.
    auto two = delay_step(m, s, Rational(1, 2));
    REQUIRE(two);
    auto twob = delay_step(m, *two, Rational(3, 2));
    auto once = delay_step(m, s, Rational(2));
    REQUIRE(twob);
    REQUIRE(once);
    CHECK(twob->loc == once->loc);
    CHECK(twob->val[0] == once->val[0]);
}

TEST_CASE("enabled_actions lists exactly the firable edges") {
    Tmg m = parse_model(read_file("relay.model"));
    int B = m.find_location("B");
    CHECK(enabled_actions(m, {B, {Rational(1)}}) ==
          std::vector<int>{1, 2, 3}); // a2, a3, a4
    CHECK(enabled_actions(m, {B, {Rational(5)}}) == std::vector<int>{1});
    CHECK(enabled_actions(m, {m.find_location("Goal"), {Rational(0)}})
              .empty());
}

TEST_CASE("resets zero exactly the listed clocks") {
    Tmg m = parse_model(
        "system { clocks: x, y; players: P; ceiling: 9; }\n"
        "location L { init; }\n"
        "edge a: L -> L { player: P; reset: y; }\n");
    ConcreteState s{0, {Rational(3), Rational(5, 2)}};
    auto t = discrete_step(m, 0, s);
    REQUIRE(t);
    CHECK(t->val[0] == Rational(3));
    CHECK(t->val[1] == Rational(0));
}

TEST_CASE("to_constraints translates each comparison") {
    std::vector<ClockCmp> cmps{{0, CmpOp::Lt, 3},
                               {1, CmpOp::Ge, 2},
                               {0, CmpOp::Eq, 1}};
    ConstraintConjunction cs = to_constraints(cmps);
    // Eq expands into both directions.
    REQUIRE(cs.size() == 4);
    Valuation yes{Rational(1), Rational(2)};
    Valuation no{Rational(1), Rational(1)};
    for (const AtomConstraint& c : cs) CHECK(c.holds(yes));
    bool all = true;
    for (const AtomConstraint& c : cs) all = all && c.holds(no);
    CHECK(!all);
}
