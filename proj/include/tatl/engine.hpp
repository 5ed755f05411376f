#ifndef TATL_ENGINE_HPP
#define TATL_ENGINE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace tatl {

// On-the-fly least fixed point solver over an extended abstract dependency
// graph. The provider supplies the vertex space lazily:
//
//   using Value;                       partially ordered, with bottom
//   int root();
//   const std::vector<int>& edges(int v);
//   Value bottom(int v);
//   Value evaluate(int v, const std::vector<Value>& in, const Value& cur);
//   bool leq(const Value&, const Value&);
//   bool monotonic(int v);
//   int dist(int v);
//   std::vector<int> candidates(int v);          merge bucket of v
//   std::optional<std::function<Value(const Value&)>>
//       derive(int small, int big);              small derivable from big
//   bool ignore_all(int v, const Value&);
//   size_t generated() const;
//
// Vertices with non-monotonic value functions are only evaluated while no
// vertex of strictly smaller dist is waiting, which stratifies the run
// into the component order.
template <typename Provider>
class EadgSolver {
  public:
    using Value = typename Provider::Value;
    using Derive = std::function<Value(const Value&)>;

    struct Stats {
        size_t generated = 0;
        size_t explored = 0;
        size_t evaluations = 0;
        size_t merges = 0;
        size_t replacements = 0;
        size_t pruned = 0;
        size_t picks = 0;
    };

    struct Result {
        Value value;
        bool early = false;
        bool timed_out = false;
        Stats stats;
    };

    EadgSolver(Provider& prov, bool merging) : prov_(prov), merging_(merging) {}

    void set_early_stop(std::function<bool(const Value&)> f) {
        early_stop_ = std::move(f);
    }
    void set_deadline(std::chrono::steady_clock::time_point d) { deadline_ = d; }

    Result solve() {
        root_ = prov_.root();
        touch(root_);
        push_explore(root_);
        while (true) {
            int v = pick();
            if (v < 0) break;
            stats_.picks++;
            if ((stats_.picks & 0xff) == 0 && deadline_ &&
                std::chrono::steady_clock::now() > *deadline_)
                return finish(false, true);
            prune_dependents(v);
            VS& s = st_[v];
            if (v != root_ && s.deps.empty()) continue;
            if (!s.explored) v = explore(v);
            if (!prov_.monotonic(v) && !pickable(v)) {
                push_update(v);
                continue;
            }
            if (evaluate(v)) return finish(true, false);
            st_[v].in_pass = true;
        }
        return finish(false, false);
    }

  private:
    struct VS {
        Value alpha;
        bool has_alpha = false;
        bool explored = false;
        bool active = false;
        bool in_pass = false;
        bool in_wait = false;
        std::vector<int> targets;
        std::vector<std::optional<Derive>> derives;
        std::set<int> deps;
    };

    Provider& prov_;
    bool merging_;
    std::function<bool(const Value&)> early_stop_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::map<int, VS> st_;
    std::vector<int> upd_, exp_;
    std::map<int, int> wait_dist_; // dist -> waiting count
    int root_ = -1;
    std::vector<Derive> root_wrap_;
    Stats stats_;

    VS& touch(int v) {
        auto it = st_.find(v);
        if (it == st_.end()) {
            it = st_.emplace(v, VS{}).first;
            it->second.alpha = prov_.bottom(v);
            it->second.has_alpha = true;
            it->second.active = true;
        }
        return it->second;
    }

    Value wrapped_root_value() {
        Value v = st_[root_].alpha;
        for (auto it = root_wrap_.rbegin(); it != root_wrap_.rend(); ++it)
            v = (*it)(v);
        return v;
    }

    Result finish(bool early, bool timed_out) {
        Result r{wrapped_root_value(), early, timed_out, stats_};
        r.stats.generated = prov_.generated();
        return r;
    }

    void push_wait(std::vector<int>& stack, int v) {
        VS& s = touch(v);
        if (s.in_wait || !s.active) return;
        s.in_wait = true;
        wait_dist_[prov_.dist(v)]++;
        stack.push_back(v);
    }
    void push_update(int v) { push_wait(upd_, v); }
    void push_explore(int v) { push_wait(exp_, v); }

    int min_wait_dist() const {
        for (const auto& [d, n] : wait_dist_)
            if (n > 0) return d;
        return -1;
    }

    bool pickable(int v) {
        if (prov_.monotonic(v)) return true;
        int d = min_wait_dist();
        return d < 0 || prov_.dist(v) <= d;
    }

    int take_from(std::vector<int>& stack) {
        for (size_t i = stack.size(); i-- > 0;) {
            int v = stack[i];
            VS& s = st_[v];
            if (!s.in_wait || !s.active) {
                stack.erase(stack.begin() + i);
                continue;
            }
            if (!prov_.monotonic(v)) {
                int d = min_wait_dist();
                if (d >= 0 && prov_.dist(v) > d) continue;
            }
            stack.erase(stack.begin() + i);
            s.in_wait = false;
            wait_dist_[prov_.dist(v)]--;
            return v;
        }
        return -1;
    }

    int pick() {
        int v = take_from(upd_);
        if (v < 0) v = take_from(exp_);
        return v;
    }

    // Generates the successors of v, merging against active vertices of
    // the same bucket. Returns the id that now stands for v (v itself, or
    // its replacement if v got merged into a successor), or -1 when the
    // exploration moved to a replacement already queued.
    int explore(int v) {
        VS& s = st_[v];
        s.explored = true;
        stats_.explored++;
        const std::vector<int>& succs = prov_.edges(v);
        std::vector<std::pair<int, std::optional<Derive>>> slots;
        slots.reserve(succs.size());
        int self = v;
        for (int vi : succs) {
            int target = vi;
            std::optional<Derive> dv;
            if (merging_) {
                bool done = false;
                for (int c : prov_.candidates(vi)) {
                    if (c == vi) continue;
                    auto it = st_.find(c);
                    if (it == st_.end() || !it->second.active) continue;
                    if (auto f = prov_.derive(vi, c)) {
                        // New successor is derivable from an active vertex:
                        // never materialize it.
                        target = c;
                        dv = *f;
                        stats_.merges++;
                        done = true;
                        break;
                    }
                    if (auto f = prov_.derive(c, vi)) {
                        bool was_self = c == self;
                        replace(c, *f, vi);
                        // slots of this exploration are not wired up yet,
                        // so redirect any that pointed at c by hand
                        for (auto& [t, dv] : slots)
                            if (t == c) {
                                if (dv) {
                                    Derive prev = *dv, g = *f;
                                    dv = [prev, g](const Value& w) {
                                        return prev(g(w));
                                    };
                                } else {
                                    dv = *f;
                                }
                                t = vi;
                            }
                        if (was_self) self = vi;
                        stats_.replacements++;
                        break;
                    }
                }
                (void)done;
            }
            touch(target);
            slots.emplace_back(target, dv);
        }
        VS& sv = st_[self];
        if (self != v) {
            // v merged into a successor during its own exploration;
            // restart on the replacement.
            if (!sv.explored) return explore(self);
            return self;
        }
        for (auto& [t, dv] : slots) {
            sv.targets.push_back(t);
            sv.derives.push_back(dv);
            st_[t].deps.insert(self);
        }
        // Push in reverse so successors pop in edge order off the LIFO
        // exploration stack.
        for (size_t i = sv.targets.size(); i-- > 0;) {
            int t = sv.targets[i];
            if (!st_[t].in_pass && !st_[t].explored) push_explore(t);
        }
        return self;
    }

    void replace(int old, const Derive& f, int neu) {
        VS& so = st_[old];
        VS& sn = touch(neu);
        sn.deps = std::move(so.deps);
        so.deps.clear();
        for (int u : sn.deps) {
            VS& su = st_[u];
            for (size_t i = 0; i < su.targets.size(); ++i) {
                if (su.targets[i] != old) continue;
                su.targets[i] = neu;
                if (su.derives[i]) {
                    Derive prev = *su.derives[i];
                    su.derives[i] = [prev, f](const Value& w) {
                        return prev(f(w));
                    };
                } else {
                    su.derives[i] = f;
                }
            }
            push_update(u);
        }
        for (int t : so.targets) {
            auto it = st_.find(t);
            if (it != st_.end()) it->second.deps.erase(old);
        }
        if (so.in_wait) {
            so.in_wait = false;
            wait_dist_[prov_.dist(old)]--;
        }
        so.active = false;
        so.in_pass = false;
        if (old == root_) {
            root_ = neu;
            root_wrap_.push_back(f);
        }
    }

    // Evaluates v; returns true if the whole run can stop early.
    bool evaluate(int v) {
        VS& s = st_[v];
        std::vector<Value> in;
        in.reserve(s.targets.size());
        for (size_t i = 0; i < s.targets.size(); ++i) {
            const Value& raw = st_[s.targets[i]].alpha;
            in.push_back(s.derives[i] ? (*s.derives[i])(raw) : raw);
        }
        Value d = prov_.evaluate(v, in, s.alpha);
        stats_.evaluations++;
        bool changed;
        if (prov_.monotonic(v))
            changed = prov_.leq(s.alpha, d) && !prov_.leq(d, s.alpha);
        else
            changed = !(prov_.leq(s.alpha, d) && prov_.leq(d, s.alpha));
        if (!changed) {
            if (v == root_ && prov_.ignore_all(v, s.alpha)) return true;
            return false;
        }
        s.alpha = d;
        for (int u : s.deps) {
            if (prov_.ignore_all(u, st_[u].alpha)) continue;
            push_update(u);
        }
        if (v == root_) {
            if (early_stop_ && early_stop_(wrapped_root_value())) return true;
            if (prov_.ignore_all(v, s.alpha)) return true;
        }
        return false;
    }

    void prune_dependents(int v) {
        VS& s = st_[v];
        std::vector<int> cut;
        for (int u : s.deps)
            if (prov_.ignore_all(u, st_[u].alpha)) cut.push_back(u);
        if (cut.empty()) return;
        for (int u : cut) s.deps.erase(u);
        stats_.pruned += cut.size();
        if (s.deps.empty() && v != root_) {
            s.in_pass = false;
            prune_rec(v);
        }
    }

    void prune_rec(int v) {
        VS& s = st_[v];
        for (int t : s.targets) {
            auto it = st_.find(t);
            if (it == st_.end()) continue;
            if (!it->second.deps.erase(v)) continue;
            if (it->second.deps.empty() && t != root_) {
                it->second.in_pass = false;
                prune_rec(t);
            }
        }
    }
};

} // namespace tatl

#endif
