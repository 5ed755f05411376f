#ifndef TATL_ORACLE_HPP
#define TATL_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "tatl/formula.hpp"
#include "tatl/symbolic.hpp"

namespace tatl {

struct OracleInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive clock-region graph of a game, the oracle grounding the
// symbolic operators: every operator is recomputed here definitionally by
// searching delay chains, never through the symbolic equations.
class RegionGraph {
  public:
    struct Region {
        int loc;
        std::vector<int> ip;   // per clock; ceiling+1 encodes "above"
        std::vector<int> frac; // fraction rank, 0 = integer-valued
        friend auto operator<=>(const Region&, const Region&) = default;
    };

    // Feasibility bounds: <= 3 clocks, ceiling <= 8, <= 40 locations.
    explicit RegionGraph(const GameFrame& gf);

    const GameFrame& game() const { return *gf_; }
    size_t count() const { return regions_.size(); }
    const Region& region(int id) const { return regions_[id]; }
    int id_of(const Region& r) const;
    int region_of(int loc, const Valuation& v) const;
    Valuation representative(int id) const;
    int initial_region() const;

    // Delay structure: blocked (invariant stops time), absorbing (delay
    // never leaves the region), or the next region upward.
    enum class DelayKind { Blocked, Absorbing, Next };
    DelayKind delay_kind(int id) const { return delay_[id].first; }
    int delay_next(int id) const { return delay_[id].second; }
    bool is_timelocked(int id) const { return timelocked_[id]; }

    // Enabled discrete steps: (edge, successor region).
    const std::vector<std::pair<int, int>>& discrete(int id) const {
        return discrete_[id];
    }

  private:
    const GameFrame* gf_;
    std::vector<Region> regions_;
    std::map<Region, int> index_;
    std::vector<std::pair<DelayKind, int>> delay_;
    std::vector<char> timelocked_;
    std::vector<std::vector<std::pair<int, int>>> discrete_;
};

using RSet = std::vector<char>; // indexed by region id

RSet rset_none(const RegionGraph& rg);
RSet rset_all(const RegionGraph& rg);
RSet rset_complement(const RegionGraph& rg, const RSet& w);
RSet rset_union(const RSet& a, const RSet& b);
RSet rset_intersect(const RSet& a, const RSet& b);
RSet rset_subtract(const RSet& a, const RSet& b);
bool rset_eq(const RSet& a, const RSet& b);

// Conversions between region sets and symbolic state sets.
Dbm region_zone(const RegionGraph& rg, int id);
StateSet rset_to_stateset(const RegionGraph& rg, const RSet& w);
RSet stateset_to_rset(const RegionGraph& rg, const StateSet& w);
// True when membership of w is constant across each region.
bool region_stable(const RegionGraph& rg, const StateSet& w);

// Definitional operator computations.
RSet region_pred_action(const RegionGraph& rg, int edge, const RSet& w);
RSet region_post_action(const RegionGraph& rg, int edge, const RSet& w);
RSet region_pred_coalition(const RegionGraph& rg,
                           const std::vector<int>& coalition, const RSet& w);
RSet region_timelocked(const RegionGraph& rg, const RSet& w);
RSet region_pred_time(const RegionGraph& rg, const RSet& good, const RSet& bad);
RSet region_forceable(const RegionGraph& rg, const std::vector<int>& coalition,
                      const RSet& w1, const RSet& w2, const RSet& wnext);
RSet region_unavoidable(const RegionGraph& rg,
                        const std::vector<int>& coalition, const RSet& w1,
                        const RSet& w2, const RSet& wnext);

// Bottom-up satisfaction sets over the region graph; the formula must be
// desugared and negation-pushed.
RSet region_sat(const RegionGraph& rg, const FormulaPtr& f);
bool region_model_check(const GameFrame& gf, const FormulaPtr& f);

// Memoryless region-level strategy profile for the coalition players:
// profile[(player, region)] = edge id, absent meaning wait.
using RegionProfile = std::map<std::pair<int, int>, int>;

// Checks that the profile is well-formed and that every outcome run from
// the initial region satisfies phi1 U phi2.
bool check_strategy_witness(const RegionGraph& rg,
                            const std::vector<int>& coalition,
                            const RegionProfile& profile, const RSet& phi1,
                            const RSet& phi2);

} // namespace tatl

#endif
