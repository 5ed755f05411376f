#include <doctest.h>

#include "helpers.hpp"
#include "tatl/federation.hpp"

using namespace tatl;
using testutil::grid_points;
using testutil::simple_frame;

namespace {

// A pool of zones used to build random federations.
std::vector<Dbm> zone_pool(const FramePtr& f) {
    return {
        Dbm::from_constraints(f, {atom_le(0, 2), atom_le(1, 2)}),
        Dbm::from_constraints(f, {atom_ge(0, 1), atom_lt(0, 3)}),
        Dbm::from_constraints(f, {atom_ge(1, 2), {0, 1, Bound::weak(1)}}),
        Dbm::from_constraints(f, {atom_ge(0, 3), atom_le(1, 1)}),
        Dbm::zero(f),
    };
}

Federation random_fed(const FramePtr& f, std::mt19937& rng) {
    auto pool = zone_pool(f);
    Federation fed(f);
    for (const Dbm& z : pool)
        if (rng() % 2) fed.add(z);
    return fed;
}

} // namespace

TEST_CASE("set operations are pointwise boolean algebra") {
    auto f = simple_frame(2, 4);
    auto pts = grid_points(f, 5);
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        Federation a = random_fed(f, rng);
        Federation b = random_fed(f, rng);
        Federation u = a.unite(b);
        Federation i = a.intersect(b);
        Federation s = a.subtract(b);
        for (const Valuation& v : pts) {
            bool av = a.contains(v), bv = b.contains(v);
            CHECK(u.contains(v) == (av || bv));
            CHECK(i.contains(v) == (av && bv));
            CHECK(s.contains(v) == (av && !bv));
        }
    }
}

TEST_CASE("subset_eq is membership inclusion") {
    auto f = simple_frame(2, 4);
    auto pts = grid_points(f, 5);
    std::mt19937 rng(12);
    for (int t = 0; t < 30; ++t) {
        Federation a = random_fed(f, rng);
        Federation b = random_fed(f, rng);
        bool incl = true;
        for (const Valuation& v : pts)
            if (a.contains(v) && !b.contains(v)) incl = false;
        CHECK(a.subset_eq(b) == incl);
    }
}

TEST_CASE("same_set sees through different zone decompositions") {
    auto f = simple_frame(1, 4);
    Federation whole(Dbm::from_constraints(f, {atom_le(0, 4)}));
    Federation split(f);
    split.add(Dbm::from_constraints(f, {atom_le(0, 2)}));
    split.add(Dbm::from_constraints(f, {atom_ge(0, 2), atom_le(0, 4)}));
    CHECK(whole.same_set(split));
    Federation gap(f);
    gap.add(Dbm::from_constraints(f, {atom_le(0, 2)}));
    gap.add(Dbm::from_constraints(f, {atom_gt(0, 2), atom_le(0, 4)}));
    // A point boundary was dropped, so the sets still coincide: x = 2 is
    // covered by the first zone.
    CHECK(whole.same_set(gap));
    Federation hole(f);
    hole.add(Dbm::from_constraints(f, {atom_lt(0, 2)}));
    hole.add(Dbm::from_constraints(f, {atom_gt(0, 2), atom_le(0, 4)}));
    CHECK(!whole.same_set(hole));
}

TEST_CASE("timed and clock operations distribute over members") {
    auto f = simple_frame(2, 4);
    auto pts = grid_points(f, 5);
    std::mt19937 rng(13);
    for (int t = 0; t < 15; ++t) {
        Federation a = random_fed(f, rng);
        Federation up = a.up(), down = a.down();
        Federation r0 = a.reset({0}), fr1 = a.free(1);
        for (const Valuation& v : pts) {
            bool wu = false, wd = false, wr = false, wf = false;
            for (const Dbm& z : a.zones()) {
                wu = wu || z.up().contains(v);
                wd = wd || z.down().contains(v);
                wr = wr || z.reset({0}).contains(v);
                wf = wf || z.free(1).contains(v);
            }
            CHECK(up.contains(v) == wu);
            CHECK(down.contains(v) == wd);
            CHECK(r0.contains(v) == wr);
            CHECK(fr1.contains(v) == wf);
        }
    }
}

TEST_CASE("reduce preserves the set and drops included zones") {
    auto f = simple_frame(2, 4);
    Federation fed(f);
    Dbm big = Dbm::from_constraints(f, {atom_le(0, 3), atom_le(1, 3)});
    Dbm small = Dbm::from_constraints(f, {atom_le(0, 1), atom_le(1, 1)});
    Dbm other = Dbm::from_constraints(f, {atom_ge(0, 4)});
    fed.add(small);
    fed.add(big);
    fed.add(other);
    Federation red = fed.reduce();
    CHECK(red.size() == 2);
    CHECK(red.same_set(fed));
}

TEST_CASE("empty federation is the bottom element") {
    auto f = simple_frame(2, 4);
    Federation e = Federation::empty(f);
    Federation a(Dbm::zero(f));
    CHECK(e.is_empty());
    CHECK(e.subset_eq(a));
    CHECK(!a.subset_eq(e));
    CHECK(a.intersect(e).is_empty());
    CHECK(a.unite(e).same_set(a));
    CHECK(a.subtract(e).same_set(a));
    CHECK(e.up().is_empty());
    CHECK(e.normalized().is_empty());
    // Adding an empty zone leaves the federation empty.
    Federation e2(f);
    e2.add(Dbm::empty(f));
    CHECK(e2.is_empty());
}

TEST_CASE("iterated union and subtraction stabilize") {
    // Chained unions of overlapping zones reach a fixpoint under same_set.
    auto f = simple_frame(1, 6);
    Federation acc = Federation::empty(f);
    Federation prev = acc;
    for (int64_t i = 0; i < 6; ++i) {
        acc = acc.unite(Federation(
            Dbm::from_constraints(f, {atom_ge(0, i), atom_le(0, i + 1)})));
        CHECK((i == 0 || !acc.same_set(prev)));
        prev = acc;
    }
    Federation again = acc.unite(
        Federation(Dbm::from_constraints(f, {atom_ge(0, 2), atom_le(0, 5)})));
    CHECK(again.same_set(acc));
    CHECK(acc.same_set(Federation(Dbm::from_constraints(f, {atom_le(0, 6)}))));
}

TEST_CASE("subtract and intersect partition a federation") {
    auto f = simple_frame(2, 4);
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        Federation a = random_fed(f, rng);
        Federation b = random_fed(f, rng);
        Federation diff = a.subtract(b);
        Federation meet = a.intersect(b);
        CHECK(diff.unite(meet).same_set(a));
        CHECK(diff.intersect(b).is_empty());
    }
}
