#ifndef TATL_RUNNER_HPP
#define TATL_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "tatl/encoding.hpp"
#include "tatl/engine.hpp"

namespace tatl {

struct RunOptions {
    EngineMode mode = EngineMode::Incl;
    bool with_unsat = false;
    bool use_oracle = false; // cross-check against the region graph
    double timeout_sec = 0;  // per query; 0 disables
};

struct QueryResult {
    std::string name;
    std::string formula;
    bool verdict = false;
    bool early = false;
    bool timed_out = false;
    std::optional<bool> expected;
    std::optional<bool> oracle;
    std::string oracle_note; // set when the oracle was requested but skipped
    double seconds = 0;
    EadgSolver<TatlProvider>::Stats stats;

    // expected/oracle verdicts that are present must agree
    bool ok() const {
        if (timed_out) return false;
        if (expected && *expected != verdict) return false;
        if (oracle && *oracle != verdict) return false;
        return true;
    }
};

QueryResult run_query(const Tmg& model, const Query& q, const RunOptions& opt);
std::vector<QueryResult> run_queries(const Tmg& model,
                                     const std::vector<Query>& qs,
                                     const RunOptions& opt);

std::string report_text(const std::vector<QueryResult>& rs, bool stats);
std::string report_json(const std::vector<QueryResult>& rs);

// Peak resident set size of this process in kilobytes, or -1 if unknown.
long peak_rss_kb();

} // namespace tatl

#endif
