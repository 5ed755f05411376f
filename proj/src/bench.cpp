#include "tatl/bench.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tatl {

namespace {

// n trains share a one-slot bridge; a gate controller C hands out grants.
// A misbehaving controller can grant while someone is crossing, which lets
// the second train barge in and collide. The schedule clock s is never
// reset; it timestamps how far into the schedule each crossing happens.
BenchInstance train_gate(int n) {
    std::ostringstream m;
    m << "system {\n  clocks: x, s;\n  players: C";
    for (int i = 1; i <= n; ++i) m << ", T" << i;
    m << ";\n  ceiling: " << 2 * n + 2 << ";\n}\n\n";
    m << "location Free { init; }\n";
    for (int i = 1; i <= n; ++i) m << "location Gr" << i << " { }\n";
    for (int i = 1; i <= n; ++i)
        m << "location Cross" << i << " { invariant: x <= 2; }\n";
    for (int i = 1; i <= n; ++i)
        m << "location Done" << i << " { labels: crossed" << i << "; }\n";
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
                m << "location CrossGr" << i << "_" << j
                  << " { invariant: x <= 2; }\n";
    m << "location Crash { labels: twoon; }\n\n";
    for (int i = 1; i <= n; ++i)
        m << "edge grant" << i << ": Free -> Gr" << i << " { player: C; }\n";
    for (int i = 1; i <= n; ++i)
        m << "edge enter" << i << ": Gr" << i << " -> Cross" << i
          << " { player: T" << i << "; reset: x; }\n";
    for (int i = 1; i <= n; ++i)
        m << "edge leave" << i << ": Cross" << i << " -> Done" << i
          << " { player: T" << i << "; guard: x >= 1; }\n";
    for (int i = 1; i <= n; ++i)
        m << "edge back" << i << ": Done" << i
          << " -> Free { player: C; reset: x; }\n";
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            m << "edge grant" << i << "_" << j << ": Cross" << i
              << " -> CrossGr" << i << "_" << j
              << " { player: C; guard: x <= 1; }\n";
            m << "edge barge" << i << "_" << j << ": CrossGr" << i << "_" << j
              << " -> Crash { player: T" << j << "; }\n";
            m << "edge leavegr" << i << "_" << j << ": CrossGr" << i << "_"
              << j << " -> Gr" << j << " { player: T" << i
              << "; guard: x >= 1; }\n";
        }

    std::ostringstream q;
    q << "t1_alone: <<T1>> F crossed1 => false\n"
      << "with_gate: <<C,T1>> F crossed1 => true\n"
      << "trains_collide: <<T1,T2>> F twoon => false\n"
      << "gate_safe: <<C>> G !twoon => true\n"
      << "fast_cross_strict: <<C,T1>> F<1 crossed1 => false\n"
      << "fast_cross_weak: <<C,T1>> F<=1 crossed1 => true\n"
      << "on_schedule: <<C,T1>> F (crossed1 && s <= 2) => true\n";
    return {"train-gate-" + std::to_string(n), m.str(), q.str()};
}

// n cowboys start with unloaded guns; the Guns player hands out loads, a
// load takes one time unit (shared clock r) to become usable, and the
// global clock t caps everything at 2.
BenchInstance standoff(int n) {
    // cowboy states: 0 alive unloaded, 1 alive loaded, 2 dead
    using State = std::vector<int>;
    auto name = [](const State& s) {
        std::string out = "c";
        for (int v : s) out += "ULD"[v];
        return out;
    };
    State init(n, 0);
    std::set<State> seen{init};
    std::deque<State> todo{init};
    std::vector<State> order{init};
    struct Ed {
        std::string action, src, dst, player, guard;
        bool reset_r;
    };
    std::vector<Ed> edges;
    while (!todo.empty()) {
        State s = todo.front();
        todo.pop_front();
        auto visit = [&](const State& t) {
            if (seen.insert(t).second) {
                todo.push_back(t);
                order.push_back(t);
            }
        };
        for (int i = 0; i < n; ++i) {
            if (s[i] == 0) {
                State t = s;
                t[i] = 1;
                edges.push_back({"load" + std::to_string(i + 1) + "_" + name(s),
                                 name(s), name(t), "Guns", "", true});
                visit(t);
            }
            if (s[i] == 1)
                for (int j = 0; j < n; ++j) {
                    if (j == i || s[j] == 2) continue;
                    State t = s;
                    t[j] = 2;
                    edges.push_back({"sh" + std::to_string(i + 1) +
                                         std::to_string(j + 1) + "_" + name(s),
                                     name(s), name(t),
                                     "C" + std::to_string(i + 1), "r >= 1",
                                     false});
                    visit(t);
                }
        }
    }

    std::ostringstream m;
    m << "system {\n  clocks: r, t;\n  players: Guns";
    for (int i = 1; i <= n; ++i) m << ", C" << i;
    m << ";\n  ceiling: 2;\n}\n\n";
    for (const State& s : order) {
        m << "location " << name(s) << " {";
        if (s == init) m << " init;";
        m << " labels:";
        for (int i = 0; i < n; ++i)
            m << (i ? ", " : " ") << (s[i] == 2 ? "dead" : "alive") << i + 1;
        m << "; }\n";
    }
    m << "\n";
    for (const Ed& e : edges) {
        m << "edge " << e.action << ": " << e.src << " -> " << e.dst
          << " { player: " << e.player << ";";
        if (!e.guard.empty()) m << " guard: " << e.guard << ";";
        if (e.reset_r) m << " reset: r;";
        m << " }\n";
    }

    std::ostringstream q;
    q << "survive_alone: <<C1>> (alive1 U t > 1) => false\n"
      << "pacifist: <<Guns,C1>> G alive1 => true\n"
      << "shootout_possible: [[]] F dead1 => true\n"
      << "quick_kill: <<Guns,C2>> F<=1 dead1 => true\n"
      << "unarmed: <<C2>> F dead1 => false\n";
    return {"standoff-" + std::to_string(n), m.str(), q.str()};
}

// n kings pick a bit in turn; consensus is declared as soon as a king
// repeats the previous pick, and the previous bit survives the wrap back
// to king 1. Each phase must resolve within one time unit.
BenchInstance phase_king(int n) {
    std::ostringstream m;
    m << "system {\n  clocks: x;\n  players:";
    for (int i = 1; i <= n; ++i) m << (i > 1 ? ", " : " ") << "K" << i;
    m << ";\n  ceiling: 1;\n}\n\n";
    m << "location ph1n { invariant: x <= 1; init; }\n";
    for (int i = 1; i <= n; ++i)
        for (int b = 0; b <= 1; ++b)
            m << "location ph" << i << "v" << b
              << " { invariant: x <= 1; }\n";
    m << "location agree { labels: consensus; }\n\n";
    auto next = [&](int i, int b) {
        int j = i < n ? i + 1 : 1;
        return "ph" + std::to_string(j) + "v" + std::to_string(b);
    };
    for (int b = 0; b <= 1; ++b)
        m << "edge first" << b << ": ph1n -> " << next(1, b)
          << " { player: K1; reset: x; }\n";
    for (int i = 1; i <= n; ++i)
        for (int p = 0; p <= 1; ++p)
            for (int b = 0; b <= 1; ++b) {
                std::string src = "ph" + std::to_string(i) + "v" +
                                  std::to_string(p);
                std::string dst = b == p ? "agree" : next(i, b);
                m << "edge pick" << i << "_" << p << "_" << b << ": " << src
                  << " -> " << dst << " { player: K" << i
                  << "; reset: x; }\n";
            }

    std::ostringstream q;
    q << "all_runs: <<>> F consensus => false\n"
      << "some_run: [[]] F consensus => true\n"
      << "kings_agree: <<K1,K2>> F consensus => true\n"
      << "king_blocks: <<K1>> G !consensus => false\n"
      << "always_possible: <<>> G [[]] F consensus => true\n";
    return {"phase-king-" + std::to_string(n), m.str(), q.str()};
}

} // namespace

std::vector<std::string> bench_families() {
    return {"train-gate", "standoff", "phase-king"};
}

BenchInstance make_bench(const std::string& family, int n) {
    if (family == "train-gate") {
        if (n < 2 || n > 5)
            throw std::invalid_argument("train-gate takes n in 2..5");
        return train_gate(n);
    }
    if (family == "standoff") {
        if (n < 2 || n > 4)
            throw std::invalid_argument("standoff takes n in 2..4");
        return standoff(n);
    }
    if (family == "phase-king") {
        if (n < 3 || n > 4)
            throw std::invalid_argument("phase-king takes n in 3..4");
        return phase_king(n);
    }
    throw std::invalid_argument("unknown benchmark family " + family);
}

} // namespace tatl
