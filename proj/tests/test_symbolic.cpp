#include <doctest.h>

#include "helpers.hpp"
#include "tatl/oracle.hpp"
#include "tatl/symbolic.hpp"

using namespace tatl;
using testutil::read_file;

namespace {

struct Relay {
    Tmg m;
    FramePtr fr;
    GameFrame gf;
    Relay()
        : m(parse_model(read_file("relay.model"))),
          fr(std::make_shared<const ClockFrame>(
              std::vector<std::string>{"x"}, 1, std::vector<int64_t>{6})),
          gf(m, fr) {}
    int loc(const std::string& n) const { return m.find_location(n); }
    StateSet whole_loc(const std::string& n) const {
        StateSet w(gf);
        w.add(loc(n), gf.universe(loc(n)));
        return w;
    }
};

Valuation val(int64_t num, int64_t den = 1) { return {Rational(num, den)}; }

} // namespace

TEST_CASE("location universes clip to invariant and ceiling") {
    Relay r;
    CHECK(r.gf.universe(r.loc("A")).contains(val(4)));
    CHECK(!r.gf.universe(r.loc("A")).contains(val(9, 2)));
    CHECK(r.gf.universe(r.loc("Goal")).contains(val(6)));
    CHECK(!r.gf.universe(r.loc("Goal")).contains(val(13, 2)));
}

TEST_CASE("full_state_set and complement partition the state space") {
    Relay r;
    StateSet full = full_state_set(r.gf);
    CHECK(complement(full).is_empty());
    StateSet some = r.whole_loc("Goal");
    StateSet co = complement(some);
    CHECK(co.unite(some).same_set(full));
    CHECK(co.intersect(some).is_empty());
    CHECK(co.contains(r.loc("B"), val(3)));
    CHECK(!co.contains(r.loc("Goal"), val(3)));
}

TEST_CASE("pred_action applies guard, reset preimage and universes") {
    Relay r;
    StateSet goal = r.whole_loc("Goal");
    // a3: B -> Goal with guard x <= 2.
    StateSet p3 = pred_action(r.gf, 2, goal);
    CHECK(p3.contains(r.loc("B"), val(2)));
    CHECK(p3.contains(r.loc("B"), val(0)));
    CHECK(!p3.contains(r.loc("B"), val(5, 2)));
    CHECK(!p3.contains(r.loc("A"), val(0)));
    // a1: A -> B, no guard; bounded by A's invariant.
    StateSet p1 = pred_action(r.gf, 0, r.whole_loc("B"));
    CHECK(p1.contains(r.loc("A"), val(4)));
    CHECK(!p1.contains(r.loc("A"), val(9, 2)));
    // Target invariant restricts the predecessor: edge into D (x <= 3).
    StateSet p4 = pred_action(r.gf, 3, r.whole_loc("D"));
    CHECK(p4.contains(r.loc("B"), val(3)));
    CHECK(!p4.contains(r.loc("B"), val(7, 2)));
}

TEST_CASE("pred_action through a reset") {
    Tmg m = parse_model(
        "system { clocks: x, y; players: P; ceiling: 5; }\n"
        "location L { init; }\nlocation M { }\n"
        "edge a: L -> M { player: P; guard: x >= 2; reset: y; }\n");
    auto fr = std::make_shared<const ClockFrame>(
        std::vector<std::string>{"x", "y"}, 2, std::vector<int64_t>{5, 5});
    GameFrame gf(m, fr);
    StateSet w(gf);
    // Target: M with x <= 3 && y <= 1. After the reset y is 0, so only
    // the x constraint survives into the preimage; y is unconstrained.
    w.add(1, Dbm::from_constraints(fr, {atom_le(0, 3), atom_le(1, 1)}));
    StateSet p = pred_action(gf, 0, w);
    CHECK(p.contains(0, {Rational(2), Rational(5)}));
    CHECK(p.contains(0, {Rational(3), Rational(0)}));
    CHECK(!p.contains(0, {Rational(7, 2), Rational(0)})); // x > 3
    CHECK(!p.contains(0, {Rational(1), Rational(0)}));    // guard fails
    // Unreachable target slice y > 0 contributes nothing.
    StateSet w2(gf);
    w2.add(1, Dbm::from_constraints(fr, {atom_gt(1, 0)}));
    CHECK(pred_action(gf, 0, w2).is_empty());
}

TEST_CASE("post_action is the relational image") {
    Relay r;
    StateSet a = r.whole_loc("A");
    StateSet post = post_action(r.gf, 0, a);
    CHECK(post.contains(r.loc("B"), val(4)));
    CHECK(!post.contains(r.loc("B"), val(9, 2)));
    // post and pred are adjoint on the relay edges: the image of the
    // preimage stays inside the target set.
    StateSet goal = r.whole_loc("Goal");
    StateSet back = pred_action(r.gf, 2, goal);
    CHECK(post_action(r.gf, 2, back).subset_eq(goal));
}

TEST_CASE("pred_coalition unions exactly the owned actions") {
    Relay r;
    StateSet goal = r.whole_loc("Goal");
    // III owns a3 (B, x <= 2) and a6 (D).
    StateSet p = pred_coalition(r.gf, {r.m.find_player("III")}, goal);
    CHECK(p.contains(r.loc("B"), val(2)));
    CHECK(!p.contains(r.loc("B"), val(3)));
    CHECK(p.contains(r.loc("D"), val(3)));
    CHECK(!p.contains(r.loc("C"), val(0)));
    // II owns a5 (C -> Goal) and a4 (B -> D, not into goal).
    StateSet q = pred_coalition(r.gf, {r.m.find_player("II")}, goal);
    CHECK(q.contains(r.loc("C"), val(6)));
    CHECK(!q.contains(r.loc("B"), val(0)));
    CHECK(pred_coalition(r.gf, {}, goal).is_empty());
    // pred_any covers every owner.
    StateSet any = pred_any(r.gf, goal);
    CHECK(any.same_set(p.unite(q)));
}

TEST_CASE("timelocked holds only declared invariant bounds") {
    Relay r;
    StateSet tl = timelocked(r.gf, full_state_set(r.gf));
    CHECK(tl.contains(r.loc("A"), val(4)));
    CHECK(!tl.contains(r.loc("A"), val(7, 2)));
    CHECK(tl.contains(r.loc("B"), val(5)));
    CHECK(tl.contains(r.loc("D"), val(3)));
    // C and Goal have no invariant; hitting the ceiling is not a lock.
    CHECK(!tl.contains(r.loc("C"), val(6)));
    CHECK(!tl.contains(r.loc("Goal"), val(6)));
    // Restricting the input set restricts the result.
    StateSet below(r.gf);
    below.add(r.loc("A"),
              Dbm::from_constraints(r.fr, {atom_lt(0, 4)}));
    CHECK(timelocked(r.gf, below).is_empty());
}

TEST_CASE("pred_time without obstacles is the down closure") {
    Relay r;
    StateSet g(r.gf);
    g.add(r.loc("C"), Dbm::from_constraints(r.fr, {atom_ge(0, 3), atom_le(0, 4)}));
    StateSet none(r.gf);
    StateSet p = pred_time(r.gf, g, none);
    CHECK(p.contains(r.loc("C"), val(0)));
    CHECK(p.contains(r.loc("C"), val(4)));
    CHECK(!p.contains(r.loc("C"), val(17, 4)));
    CHECK(!p.contains(r.loc("B"), val(0)));
}

TEST_CASE("pred_time stops at an obstacle strictly below the target") {
    Relay r;
    StateSet g(r.gf);
    g.add(r.loc("C"), Dbm::from_constraints(r.fr, {atom_ge(0, 3), atom_le(0, 3)}));
    StateSet b(r.gf);
    b.add(r.loc("C"), Dbm::from_constraints(r.fr, {atom_ge(0, 2), atom_le(0, 2)}));
    StateSet p = pred_time(r.gf, g, b);
    // Starting at or below the obstacle would cross it; past it is fine.
    CHECK(p.contains(r.loc("C"), val(3)));
    CHECK(p.contains(r.loc("C"), val(5, 2)));
    CHECK(!p.contains(r.loc("C"), val(2)));
    CHECK(!p.contains(r.loc("C"), val(1)));
}

TEST_CASE("pred_time avoids bad on the closed delay interval") {
    Relay r;
    // Good and bad overlap at x == 2: the endpoint itself must avoid bad,
    // so the overlap point and everything below it are out, while the
    // part of good strictly past the obstacle survives.
    StateSet g(r.gf);
    g.add(r.loc("C"), Dbm::from_constraints(r.fr, {atom_ge(0, 2), atom_le(0, 3)}));
    StateSet b(r.gf);
    b.add(r.loc("C"), Dbm::from_constraints(r.fr, {atom_ge(0, 2), atom_le(0, 2)}));
    StateSet p = pred_time(r.gf, g, b);
    CHECK(!p.contains(r.loc("C"), val(2)));
    CHECK(!p.contains(r.loc("C"), val(1)));
    CHECK(p.contains(r.loc("C"), val(5, 2)));
    CHECK(p.contains(r.loc("C"), val(3)));
}

TEST_CASE("forceable and unavoidable basics on the relay") {
    Relay r;
    StateSet goal = r.whole_loc("Goal");
    StateSet full = full_state_set(r.gf);
    StateSet none(r.gf);
    std::vector<int> III{r.m.find_player("III")};

    // One step of <<III>> toward goal. In B the opponents always hold a2
    // into C, which is outside wnext, so even where a3 is enabled III
    // loses the race at the very first instant; only D is forceable,
    // where a6 is III's and the opponents have nothing.
    StateSet f1 = forceable(r.gf, III, full, none, goal);
    CHECK(!f1.contains(r.loc("B"), val(0)));
    CHECK(!f1.contains(r.loc("B"), val(2)));
    CHECK(f1.contains(r.loc("D"), val(0)));
    CHECK(f1.contains(r.loc("D"), val(3)));
    CHECK(!f1.contains(r.loc("A"), val(0)));
    // w2 passes through directly.
    StateSet f2 = forceable(r.gf, III, full, goal, none);
    CHECK(f2.contains(r.loc("Goal"), val(0)));

    // Unavoidable against III: whatever III does, the others reach goal.
    StateSet u = unavoidable(r.gf, III, full, none, goal);
    // From C, II can always fire a5 into Goal and III has no action there.
    CHECK(u.contains(r.loc("C"), val(0)));
    CHECK(u.contains(r.loc("C"), val(6)));
    // From B the opponents I and II only reach C or D, never Goal, and
    // III can simply hold a3; goal is not unavoidable in one step.
    CHECK(!u.contains(r.loc("B"), val(0)));

    // Both operators stay inside pred_time of their good sets and are
    // monotone in wnext.
    StateSet bigger = forceable(r.gf, III, full, none, full);
    CHECK(f1.subset_eq(bigger));
    StateSet ubigger = unavoidable(r.gf, III, full, none, full);
    CHECK(u.subset_eq(ubigger));
}

TEST_CASE("timelock bullet lets a lone player win at a frozen instant") {
    Relay r;
    StateSet goal = r.whole_loc("Goal");
    StateSet full = full_state_set(r.gf);
    StateSet none(r.gf);
    std::vector<int> II{r.m.find_player("II")};
    // At <B, x == 5> time is locked, a3 has expired and a4 needs x <= 3,
    // so neither II itself nor its opponents can deliver goal next.
    StateSet u = unavoidable(r.gf, II, full, none, goal);
    CHECK(!u.contains(r.loc("B"), val(5)));
    // But I can: a2 leaves B, and forceable credits the timelocked state
    // H-bullet where the opponents must resolve the lock.
    std::vector<int> I{r.m.find_player("I")};
    StateSet c_set = r.whole_loc("C");
    StateSet fI = forceable(r.gf, I, full, none, c_set);
    CHECK(fI.contains(r.loc("B"), val(5)));
}

TEST_CASE("symbolic operators agree with the region graph") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 12) {
        Tmg m = testutil::random_game(rng);
        FormulaPtr noop = f_true();
        FramePtr fr = build_frame(m, noop);
        GameFrame gf(m, fr);
        RegionGraph rg(gf);
        auto rand_rset = [&](int density) {
            RSet w = rset_none(rg);
            for (size_t i = 0; i < w.size(); ++i)
                w[i] = static_cast<int>(rng() % 4) < density;
            return w;
        };
        for (int t = 0; t < 3; ++t) {
            RSet w = rand_rset(2), w2 = rand_rset(1), wn = rand_rset(2);
            StateSet sw = rset_to_stateset(rg, w);
            StateSet sw2 = rset_to_stateset(rg, w2);
            StateSet swn = rset_to_stateset(rg, wn);
            std::vector<int> coal;
            if (rng() % 2) coal.push_back(0);
            if (rng() % 2) coal.push_back(1);

            CHECK(stateset_to_rset(rg, pred_coalition(gf, coal, sw)) ==
                  region_pred_coalition(rg, coal, w));
            CHECK(stateset_to_rset(rg, timelocked(gf, sw)) ==
                  region_timelocked(rg, w));
            CHECK(stateset_to_rset(rg, pred_time(gf, sw, sw2)) ==
                  region_pred_time(rg, w, w2));
            CHECK(stateset_to_rset(rg, forceable(gf, coal, sw, sw2, swn)) ==
                  region_forceable(rg, coal, w, w2, wn));
            CHECK(stateset_to_rset(rg, unavoidable(gf, coal, sw, sw2, swn)) ==
                  region_unavoidable(rg, coal, w, w2, wn));
            if (!m.edges.empty()) {
                int e = static_cast<int>(rng() % m.edges.size());
                CHECK(stateset_to_rset(rg, pred_action(gf, e, sw)) ==
                      region_pred_action(rg, e, w));
                CHECK(stateset_to_rset(rg, post_action(gf, e, sw)) ==
                      region_post_action(rg, e, w));
            }
        }
        ++done;
    }
}
