#include "tatl/runner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tatl/oracle.hpp"

namespace tatl {

QueryResult run_query(const Tmg& model, const Query& q, const RunOptions& opt) {
    QueryResult r;
    r.name = q.name;
    r.formula = q.formula->str();
    r.expected = q.expected;

    FormulaPtr f = push_negations(desugar(q.formula));
    FramePtr frame = build_frame(model, f);
    GameFrame gf(model, frame);

    TatlProvider prov(gf, f, opt.mode, opt.with_unsat);
    EadgSolver<TatlProvider> solver(prov, opt.mode == EngineMode::Incl);

    Valuation zeros(frame->size(), Rational(0));
    solver.set_early_stop([&](const DualValue& v) {
        if (v.sat.contains(zeros)) return true;
        return opt.with_unsat && v.unsat.contains(zeros);
    });
    if (opt.timeout_sec > 0)
        solver.set_deadline(std::chrono::steady_clock::now() +
                            std::chrono::microseconds(static_cast<int64_t>(
                                opt.timeout_sec * 1e6)));

    auto t0 = std::chrono::steady_clock::now();
    auto res = solver.solve();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    r.early = res.early;
    r.timed_out = res.timed_out;
    r.stats = res.stats;
    r.verdict = res.value.sat.contains(zeros);

    if (opt.use_oracle && !r.timed_out) {
        try {
            r.oracle = region_model_check(gf, f);
        } catch (const OracleInfeasible& e) {
            r.oracle_note = e.what();
        }
    }
    return r;
}

std::vector<QueryResult> run_queries(const Tmg& model,
                                     const std::vector<Query>& qs,
                                     const RunOptions& opt) {
    std::vector<QueryResult> out;
    out.reserve(qs.size());
    for (const Query& q : qs) out.push_back(run_query(model, q, opt));
    return out;
}

std::string report_text(const std::vector<QueryResult>& rs, bool stats) {
    std::ostringstream os;
    for (const QueryResult& r : rs) {
        os << r.name << ": ";
        if (r.timed_out) {
            os << "TIMEOUT";
        } else {
            os << (r.verdict ? "satisfied" : "not satisfied");
            if (r.expected && *r.expected != r.verdict)
                os << " [MISMATCH: expected "
                   << (*r.expected ? "satisfied" : "not satisfied") << "]";
            if (r.oracle && *r.oracle != r.verdict)
                os << " [ORACLE DISAGREES: "
                   << (*r.oracle ? "satisfied" : "not satisfied") << "]";
            if (!r.oracle_note.empty()) os << " [oracle skipped]";
        }
        os << "  (" << r.formula << ")\n";
        if (stats) {
            os << "  time " << r.seconds << "s, generated "
               << r.stats.generated << ", explored " << r.stats.explored
               << ", evaluations " << r.stats.evaluations << ", merges "
               << r.stats.merges << ", replacements " << r.stats.replacements
               << ", pruned " << r.stats.pruned
               << (r.early ? ", early stop" : "") << "\n";
        }
    }
    return os.str();
}

std::string report_json(const std::vector<QueryResult>& rs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const QueryResult& r : rs) {
        nlohmann::json j{
            {"name", r.name},
            {"formula", r.formula},
            {"verdict", r.verdict},
            {"early", r.early},
            {"timed_out", r.timed_out},
            {"seconds", r.seconds},
            {"stats",
             {{"generated", r.stats.generated},
              {"explored", r.stats.explored},
              {"evaluations", r.stats.evaluations},
              {"merges", r.stats.merges},
              {"replacements", r.stats.replacements},
              {"pruned", r.stats.pruned},
              {"picks", r.stats.picks}}},
        };
        if (r.expected) j["expected"] = *r.expected;
        if (r.oracle) j["oracle"] = *r.oracle;
        if (!r.oracle_note.empty()) j["oracle_note"] = r.oracle_note;
        arr.push_back(std::move(j));
    }
    long rss = peak_rss_kb();
    nlohmann::json out{{"queries", arr}};
    if (rss >= 0) out["peak_rss_kb"] = rss;
    return out.dump(2);
}

long peak_rss_kb() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream is(line.substr(6));
            long kb;
            if (is >> kb) return kb;
        }
    }
    return -1;
}

} // namespace tatl
