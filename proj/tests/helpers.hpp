#ifndef TESTS_HELPERS_HPP
#define TESTS_HELPERS_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tatl/dbm.hpp"
#include "tatl/model.hpp"

namespace testutil {

inline std::string read_file(const std::string& name) {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline tatl::FramePtr make_frame(std::vector<std::string> names,
                                 size_t model_count,
                                 std::vector<int64_t> max_consts) {
    return std::make_shared<const tatl::ClockFrame>(
        std::move(names), model_count, std::move(max_consts));
}

// n clocks, all model clocks, common ceiling k.
inline tatl::FramePtr simple_frame(size_t n, int64_t k) {
    std::vector<std::string> names;
    std::vector<int64_t> cs(n, k);
    for (size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return make_frame(std::move(names), n, std::move(cs));
}

// All valuations with coordinates i/(n+1), i = 0 .. lim*(n+1), where n is
// the frame size. The step is finer than any region of the frame, so two
// zone sets agreeing on the grid and built from the frame's constants
// agree everywhere up to lim.
inline std::vector<tatl::Valuation> grid_points(const tatl::FramePtr& f,
                                                int64_t lim) {
    int64_t den = static_cast<int64_t>(f->size()) + 1;
    int64_t steps = lim * den;
    std::vector<tatl::Valuation> out;
    std::vector<int64_t> idx(f->size(), 0);
    while (true) {
        tatl::Valuation v;
        for (int64_t i : idx) v.push_back(tatl::Rational(i, den));
        out.push_back(std::move(v));
        size_t p = 0;
        while (p < idx.size() && ++idx[p] > steps) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return out;
}

// A small random game for oracle cross-checks: 2 clocks, constants <= 5,
// a handful of locations and edges, 2 players.
inline tatl::Tmg random_game(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    std::ostringstream os;
    int nloc = pick(2, 4);
    int nedge = pick(2, 6);
    os << "system { clocks: x, y; players: P, Q; ceiling: 5; }\n";
    for (int l = 0; l < nloc; ++l) {
        os << "location L" << l << " {";
        if (l == 0) os << " init;";
        if (pick(0, 2) == 0)
            os << " invariant: " << (pick(0, 1) ? "x" : "y") << " <= "
               << pick(1, 5) << ";";
        if (pick(0, 1)) os << " labels: tag" << pick(0, 1) << ";";
        os << " }\n";
    }
    for (int e = 0; e < nedge; ++e) {
        os << "edge a" << e << ": L" << pick(0, nloc - 1) << " -> L"
           << pick(0, nloc - 1) << " { player: " << (pick(0, 1) ? "P" : "Q")
           << ";";
        int g = pick(0, 3);
        if (g == 1) os << " guard: x >= " << pick(0, 4) << ";";
        if (g == 2) os << " guard: y <= " << pick(1, 5) << ";";
        if (g == 3)
            os << " guard: x >= " << pick(0, 3) << " && y <= " << pick(2, 5)
               << ";";
        int r = pick(0, 3);
        if (r == 1) os << " reset: x;";
        if (r == 2) os << " reset: y;";
        if (r == 3) os << " reset: x, y;";
        os << " }\n";
    }
    return tatl::parse_model(os.str());
}

} // namespace testutil

#endif
