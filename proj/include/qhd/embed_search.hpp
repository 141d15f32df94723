#pragma once

// Exhaustive placement of the unknown (-1)-curves E_j and of the blow-down
// schedule for the nine dual-family configurations, with the symplectic
// filter predicates as monotone pruning rules.
//
// The exceptional curves are contracted first: they are pairwise disjoint,
// their contractions commute, and contracting anything that still meets a
// pending E would push that E off square -1, so no completed schedule is
// lost. Afterwards a known-square contract sitting at -1 is contracted
// immediately (commutation again), and the only true branching is when an
// unknown-framing chain curve is contracted: that choice pins its framing
// to -1 minus the gains it has received so far. D is never contracted; its
// framing c is pinned by the terminal square 9.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qhd/curve_config.hpp"
#include "qhd/errors.hpp"
#include "qhd/family.hpp"
#include "qhd/plumbing.hpp"

namespace qhd {

inline int count_required_exceptional(DualFamily family) {
    switch (family) {
        case DualFamily::C6: return 1;
        case DualFamily::C3: return 2;
        case DualFamily::C2: return 2;
        case DualFamily::A3: return 2;
        case DualFamily::B4: return 2;
        case DualFamily::B2: return 3;
        case DualFamily::C4L: return 2;
        case DualFamily::B4L: return 3;
        case DualFamily::A4L: return 3;
    }
    throw unknown_family("bad family");
}

struct EmbeddingProblem {
    CurveConfiguration base;            // unknown squares hold placeholders
    std::set<std::string> unknown_ids;  // D and the chain curves
    int num_exceptional = 0;
    bool use_filters = true;    // monotone pruning; off = brute-force oracle
    int mult_bound = 3;         // max multiplicity of one E with one curve
    std::int64_t c_min = -24;   // framing resource guard
    std::int64_t node_budget = 50'000'000;
};

inline EmbeddingProblem make_problem(DualFamily family, int k) {
    EmbeddingProblem p;
    p.base = from_dual_family(family, k, -1, std::vector<std::int64_t>(k, -2));
    p.unknown_ids.insert("D");
    for (int i = 1; i <= k; ++i) p.unknown_ids.insert("C" + std::to_string(i));
    p.num_exceptional = count_required_exceptional(family);
    return p;
}

struct EmbeddingSolution {
    // one entry per exceptional curve: sorted (curve id, multiplicity)
    std::vector<std::vector<std::pair<std::string, int>>> incidences;
    std::int64_t c = 0;                 // dual framing of D (configuration square c+3)
    std::vector<std::int64_t> chain;    // c_1..c_k
    std::vector<std::string> order;     // witness blow-down order, E's first

    struct FinalCurve {
        std::string id;
        std::int64_t degree = 0;
        std::int64_t square = 0;
        int singular_points = 0;
    };
    std::vector<FinalCurve> final_curves;

    auto key() const { return std::tie(incidences, c, chain); }
    bool operator<(const EmbeddingSolution& o) const { return key() < o.key(); }
    bool operator==(const EmbeddingSolution& o) const { return key() == o.key(); }
};

namespace search_detail {

enum class Kind : std::uint8_t {
    LineL,          // the (+1)-line, untouched
    SurvivorLine,   // known square, must finish at 1
    CubicKnown,     // known square, must finish at 9
    CubicUnknown,   // D: framing pinned by the terminal count
    ContractKnown,  // known square, must be contracted
    ContractUnknown // chain curve, framing pinned when contracted
};

struct Tables {
    int n_base = 0;
    int n_exc = 0;
    std::vector<std::string> ids;
    std::vector<Kind> kind;
    std::vector<std::int64_t> start_square;  // valid for known kinds
    std::vector<std::vector<std::int64_t>> inter0;
    std::vector<int> chain_indices;  // C1..Ck in order
    int d_index = -1;
    int l_index = 0;
};

inline Tables build_tables(const EmbeddingProblem& p) {
    Tables t;
    const auto& cfg = p.base;
    t.n_base = static_cast<int>(cfg.curves.size());
    t.n_exc = p.num_exceptional;
    t.l_index = cfg.l_index;
    int n = t.n_base + t.n_exc;
    t.ids.resize(n);
    t.kind.resize(n);
    t.start_square.assign(n, -1);
    t.inter0.assign(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < t.n_base; ++i) {
        const auto& c = cfg.curves[i];
        t.ids[i] = c.id;
        t.start_square[i] = c.square;
        bool unknown = p.unknown_ids.count(c.id) > 0;
        if (i == cfg.l_index)
            t.kind[i] = Kind::LineL;
        else if (c.role == CurveRole::Line)
            t.kind[i] = Kind::SurvivorLine;
        else if (c.role == CurveRole::Cubic)
            t.kind[i] = unknown ? Kind::CubicUnknown : Kind::CubicKnown;
        else
            t.kind[i] = unknown ? Kind::ContractUnknown : Kind::ContractKnown;
        if (t.kind[i] == Kind::CubicUnknown) t.d_index = i;
        for (int j = 0; j < t.n_base; ++j)
            if (j != i) t.inter0[i][j] = cfg.pair_total(i, j);
    }
    for (int e = 0; e < t.n_exc; ++e) {
        int i = t.n_base + e;
        t.ids[i] = "E" + std::to_string(e + 1);
        t.kind[i] = Kind::ContractKnown;  // square -1, must be contracted
        t.start_square[i] = -1;
    }
    for (int i = 0; i < t.n_base; ++i)
        if (t.kind[i] == Kind::ContractUnknown) t.chain_indices.push_back(i);
    std::sort(t.chain_indices.begin(), t.chain_indices.end(), [&](int a, int b) {
        const std::string &x = t.ids[a], &y = t.ids[b];
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return t;
}

using Pattern = std::vector<int>;  // multiplicity per base curve

// Per-curve multiplicity caps that are forced by homology alone (shared by
// the pruned and the brute-force enumerator): survivors cannot exceed their
// terminal square, a (-2)-contract receives exactly one hit in total, the
// guard c >= c_min bounds the rest.
inline std::vector<int> per_e_caps(const Tables& t, const EmbeddingProblem& p) {
    std::vector<int> cap(t.n_base, 0);
    for (int i = 0; i < t.n_base; ++i) {
        std::int64_t budget;
        switch (t.kind[i]) {
            case Kind::LineL: budget = 0; break;
            case Kind::SurvivorLine: budget = 1 - t.start_square[i]; break;
            case Kind::CubicKnown: budget = 9 - t.start_square[i]; break;
            case Kind::CubicUnknown: budget = 6 - p.c_min; break;
            case Kind::ContractKnown: budget = -1 - t.start_square[i]; break;
            case Kind::ContractUnknown: budget = -1 - p.c_min; break;
            default: budget = 0;
        }
        int m = 0;
        if (t.kind[i] == Kind::ContractKnown || t.kind[i] == Kind::ContractUnknown) {
            m = static_cast<int>(std::min<std::int64_t>(budget, p.mult_bound));
        } else {
            while ((m + 1) * static_cast<std::int64_t>(m + 1) <= budget && m < p.mult_bound) ++m;
        }
        cap[i] = m;
    }
    return cap;
}

inline void enumerate_patterns(const Tables& t, const std::vector<int>& cap,
                               std::vector<Pattern>& out) {
    Pattern cur(t.n_base, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == t.n_base) {
            out.push_back(cur);
            return;
        }
        for (int m = 0; m <= cap[i]; ++m) {
            cur[i] = m;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
}

// Acyclicity of the multigraph on curves away from L (contracts and E's),
// with the candidate incidences included. A pair meeting twice is a bigon.
inline bool statically_acyclic(const Tables& t, const std::vector<const Pattern*>& chosen) {
    int n = t.n_base, m = static_cast<int>(chosen.size());
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i)
        if (t.kind[i] == Kind::ContractKnown || t.kind[i] == Kind::ContractUnknown)
            nodes.push_back(i);
    int total = n + m;
    std::vector<int> uf(total);
    for (int i = 0; i < total; ++i) uf[i] = i;
    std::function<int(int)> root = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto link = [&](int a, int b) {
        int ra = root(a), rb = root(b);
        if (ra == rb) return false;
        uf[ra] = rb;
        return true;
    };
    for (std::size_t ai = 0; ai < nodes.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < nodes.size(); ++bi) {
            std::int64_t w = t.inter0[nodes[ai]][nodes[bi]];
            if (w == 0) continue;
            if (w >= 2 || !link(nodes[ai], nodes[bi])) return false;
        }
    for (int e = 0; e < m; ++e)
        for (int i : nodes) {
            int w = (*chosen[e])[i];
            if (w == 0) continue;
            if (w >= 2 || !link(n + e, i)) return false;
        }
    return true;
}

constexpr int MAXN = 24;

struct State {
    int n = 0;
    std::int64_t sq[MAXN];                // current square (known kinds)
    std::int64_t gains[MAXN];             // accumulated square gains
    std::int64_t inter[MAXN][MAXN];       // current pair totals
    std::int64_t pinned[MAXN];            // framing pinned at contraction
    std::uint8_t sing_cnt[MAXN];
    std::uint8_t sing_bad[MAXN];          // a singular event of multiplicity >= 3
    bool alive[MAXN];
    std::vector<int> order;

    void blow(int e) {
        std::int64_t m[MAXN];
        for (int i = 0; i < n; ++i) m[i] = alive[i] && i != e ? inter[e][i] : 0;
        for (int i = 0; i < n; ++i) {
            if (!m[i]) continue;
            sq[i] += m[i] * m[i];
            gains[i] += m[i] * m[i];
            if (m[i] >= 2) {
                sing_cnt[i] += 1;
                if (m[i] >= 3) sing_bad[i] = 1;
            }
            for (int j = i + 1; j < n; ++j)
                if (m[j]) {
                    inter[i][j] += m[i] * m[j];
                    inter[j][i] = inter[i][j];
                }
        }
        alive[e] = false;
        order.push_back(e);
    }
};

struct Searcher {
    const Tables& t;
    const EmbeddingProblem& p;
    std::int64_t nodes = 0;
    std::set<EmbeddingSolution> found;
    const std::vector<const Pattern*>* chosen = nullptr;

    Searcher(const Tables& tables, const EmbeddingProblem& prob) : t(tables), p(prob) {}

    bool survivor(int i) const {
        return t.kind[i] == Kind::LineL || t.kind[i] == Kind::SurvivorLine ||
               t.kind[i] == Kind::CubicKnown || t.kind[i] == Kind::CubicUnknown;
    }

    std::int64_t degree(int i) const {
        return i == t.l_index ? 1 : t.inter0[i][t.l_index];
    }

    bool prune_ok(const State& s) const {
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i]) continue;
            switch (t.kind[i]) {
                case Kind::ContractKnown:
                    if (s.sq[i] >= 0) return false;
                    break;
                case Kind::SurvivorLine:
                    if (s.sq[i] > 1 || s.sing_cnt[i] > 0) return false;
                    break;
                case Kind::CubicKnown:
                    if (s.sq[i] > 9 || s.sing_cnt[i] > 1 || s.sing_bad[i]) return false;
                    break;
                case Kind::CubicUnknown:
                    if (s.gains[i] > 6 - p.c_min || s.sing_cnt[i] > 1 || s.sing_bad[i])
                        return false;
                    break;
                default: break;
            }
        }
        // Bezout ceilings for surviving pairs
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i] || !survivor(i)) continue;
            for (int j = i + 1; j < s.n; ++j) {
                if (!s.alive[j] || !survivor(j)) continue;
                if (s.inter[i][j] > degree(i) * degree(j)) return false;
            }
        }
        // no cycle of spheres away from L
        int uf[MAXN];
        for (int i = 0; i < s.n; ++i) uf[i] = i;
        std::function<int(int)> root = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i] || survivor(i)) continue;
            for (int j = i + 1; j < s.n; ++j) {
                if (!s.alive[j] || survivor(j)) continue;
                std::int64_t w = s.inter[i][j];
                if (w == 0) continue;
                if (w >= 2) return false;
                int ra = root(i), rb = root(j);
                if (ra == rb) return false;
                uf[ra] = rb;
            }
        }
        return true;
    }

    void finalize(const State& s) {
        EmbeddingSolution sol;
        std::int64_t c = 0;
        if (t.d_index >= 0) {
            c = 6 - s.gains[t.d_index];
            if (c > -1 || c < p.c_min) return;
            if (s.sing_cnt[t.d_index] != 1 || s.sing_bad[t.d_index]) return;
        }
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i]) continue;
            switch (t.kind[i]) {
                case Kind::LineL: break;
                case Kind::SurvivorLine:
                    if (s.sq[i] != 1 || s.sing_cnt[i] != 0) return;
                    break;
                case Kind::CubicKnown:
                    if (s.sq[i] != 9 || s.sing_cnt[i] != 1 || s.sing_bad[i]) return;
                    break;
                case Kind::CubicUnknown: break;
                default: return;  // a contract survived
            }
        }
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i] || !survivor(i)) continue;
            for (int j = i + 1; j < s.n; ++j) {
                if (!s.alive[j] || !survivor(j)) continue;
                if (s.inter[i][j] != degree(i) * degree(j)) return;
            }
        }
        sol.c = c;
        for (int ci : t.chain_indices) sol.chain.push_back(s.pinned[ci]);
        for (int e = 0; e < t.n_exc; ++e) {
            std::vector<std::pair<std::string, int>> inc;
            const Pattern& pat = *(*chosen)[e];
            for (int i = 0; i < t.n_base; ++i)
                if (pat[i] > 0) inc.emplace_back(t.ids[i], pat[i]);
            std::sort(inc.begin(), inc.end());
            sol.incidences.push_back(std::move(inc));
        }
        std::sort(sol.incidences.begin(), sol.incidences.end());
        for (int idx : s.order) sol.order.push_back(t.ids[idx]);
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i] || !survivor(i)) continue;
            std::int64_t square = t.kind[i] == Kind::CubicUnknown ? (c + 3) + s.gains[i] : s.sq[i];
            sol.final_curves.push_back({t.ids[i], degree(i), square, s.sing_cnt[i]});
        }
        found.insert(std::move(sol));
    }

    void dfs(State& s) {
        if (++nodes > p.node_budget)
            throw bounds_too_loose("node budget exceeded (" + std::to_string(p.node_budget) + ")");
        if (p.use_filters && !prune_ok(s)) return;
        // a singular or stuck contract can never be contracted later
        int forced = -1;
        bool any_contract = false;
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i]) continue;
            if (t.kind[i] == Kind::ContractKnown) {
                any_contract = true;
                if (s.sq[i] == -1) {
                    if (s.sing_cnt[i]) return;
                    if (forced < 0) forced = i;
                } else if (s.sq[i] >= 0) {
                    return;  // overshot, can never be contracted
                }
            } else if (t.kind[i] == Kind::ContractUnknown) {
                any_contract = true;
                if (s.sing_cnt[i]) return;
            }
        }
        if (!any_contract) {
            finalize(s);
            return;
        }
        if (forced >= 0) {
            State next = s;
            next.blow(forced);
            dfs(next);
            return;
        }
        for (int i = 0; i < s.n; ++i) {
            if (!s.alive[i] || t.kind[i] != Kind::ContractUnknown) continue;
            if (s.gains[i] < 1) continue;  // framing would be -1, not a chain framing
            std::int64_t framing = -1 - s.gains[i];
            if (framing < p.c_min) continue;
            State next = s;
            next.pinned[i] = framing;
            next.blow(i);
            dfs(next);
        }
    }

    void run(const std::vector<const Pattern*>& pats) {
        chosen = &pats;
        State s{};
        s.n = t.n_base + t.n_exc;
        for (int i = 0; i < s.n; ++i) {
            s.sq[i] = t.start_square[i];
            s.gains[i] = 0;
            s.pinned[i] = 0;
            s.sing_cnt[i] = 0;
            s.sing_bad[i] = 0;
            s.alive[i] = true;
            for (int j = 0; j < s.n; ++j) s.inter[i][j] = 0;
        }
        for (int i = 0; i < t.n_base; ++i)
            for (int j = 0; j < t.n_base; ++j) s.inter[i][j] = t.inter0[i][j];
        for (int e = 0; e < t.n_exc; ++e)
            for (int i = 0; i < t.n_base; ++i) {
                s.inter[t.n_base + e][i] = (*pats[e])[i];
                s.inter[i][t.n_base + e] = (*pats[e])[i];
            }
        // contract the exceptional curves first
        for (int e = 0; e < t.n_exc; ++e) {
            if (p.use_filters && !prune_ok(s)) return;
            s.blow(t.n_base + e);
        }
        dfs(s);
    }
};

} // namespace search_detail

inline std::vector<EmbeddingSolution> enumerate_solutions(const EmbeddingProblem& p) {
    using namespace search_detail;
    if (static_cast<int>(p.base.curves.size()) + p.num_exceptional > MAXN)
        throw bounds_too_loose("configuration too large");
    Tables t = build_tables(p);
    Searcher searcher(t, p);
    int nb = t.n_base;

    // remaining square/hit budgets per curve, and Bezout budgets per
    // surviving pair; these hold for any valid schedule, so both the pruned
    // and the brute-force enumeration share them
    std::vector<std::int64_t> total_cap(nb, 0);
    std::vector<char> squared(nb, 0);
    for (int i = 0; i < nb; ++i) {
        switch (t.kind[i]) {
            case Kind::LineL: total_cap[i] = 0; squared[i] = 1; break;
            case Kind::SurvivorLine: total_cap[i] = 1 - t.start_square[i]; squared[i] = 1; break;
            case Kind::CubicKnown: total_cap[i] = 9 - t.start_square[i]; squared[i] = 1; break;
            case Kind::CubicUnknown: total_cap[i] = 6 - p.c_min; squared[i] = 1; break;
            case Kind::ContractKnown: total_cap[i] = -1 - t.start_square[i]; break;
            case Kind::ContractUnknown: total_cap[i] = -1 - p.c_min; break;
        }
    }
    std::vector<std::pair<int, int>> spairs;
    std::vector<std::int64_t> spair_cap;
    for (int i = 0; i < nb; ++i) {
        if (!searcher.survivor(i)) continue;
        for (int j = i + 1; j < nb; ++j) {
            if (!searcher.survivor(j)) continue;
            spairs.emplace_back(i, j);
            spair_cap.push_back(searcher.degree(i) * searcher.degree(j) - t.inter0[i][j]);
        }
    }

    // contract components of the base configuration; every component needs
    // at least one exceptional hit to ever produce a (-1)-curve
    std::vector<int> comp(nb, -1);
    int n_comp = 0;
    for (int i = 0; i < nb; ++i) {
        if (comp[i] >= 0 || !(t.kind[i] == Kind::ContractKnown || t.kind[i] == Kind::ContractUnknown))
            continue;
        std::vector<int> stack{i};
        comp[i] = n_comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < nb; ++w)
                if (comp[w] < 0 && t.inter0[v][w] > 0 &&
                    (t.kind[w] == Kind::ContractKnown || t.kind[w] == Kind::ContractUnknown)) {
                    comp[w] = n_comp;
                    stack.push_back(w);
                }
        }
        ++n_comp;
    }
    std::uint32_t all_comps = n_comp ? (1u << n_comp) - 1 : 0;

    auto caps = per_e_caps(t, p);
    std::vector<Pattern> raw;
    enumerate_patterns(t, caps, raw);

    struct PatInfo {
        const Pattern* pat;
        std::vector<std::int64_t> add;       // per-curve budget consumption
        std::uint32_t comps = 0;             // contract components touched
    };
    std::vector<PatInfo> pats;
    for (const auto& pat : raw) {
        bool ok = true;
        PatInfo info;
        info.pat = &pat;
        info.add.assign(nb, 0);
        for (int i = 0; i < nb && ok; ++i) {
            std::int64_t m = pat[i];
            info.add[i] = squared[i] ? m * m : m;
            if (info.add[i] > total_cap[i]) ok = false;
            if (m > 0 && comp[i] >= 0) info.comps |= 1u << comp[i];
        }
        if (!ok) continue;
        for (std::size_t s = 0; s < spairs.size() && ok; ++s) {
            auto [i, j] = spairs[s];
            if (static_cast<std::int64_t>(pat[i]) * pat[j] > spair_cap[s]) ok = false;
        }
        if (ok && p.use_filters) {
            // one transverse hit per contract component keeps the complement
            // of L cycle-free (a double hit closes a bigon or a path)
            std::vector<int> per_comp(n_comp, 0);
            for (int i = 0; i < nb; ++i)
                if (comp[i] >= 0) per_comp[comp[i]] += pat[i];
            for (int cmp = 0; cmp < n_comp; ++cmp)
                if (per_comp[cmp] > 1) ok = false;
        }
        if (ok) pats.push_back(std::move(info));
    }

    std::vector<const Pattern*> chosen(p.num_exceptional, nullptr);
    std::vector<std::int64_t> sum(nb, 0);
    std::vector<std::int64_t> psum(spairs.size(), 0);

    std::function<void(int, std::size_t, std::uint32_t)> pick = [&](int e, std::size_t from,
                                                                    std::uint32_t comps) {
        if (e == p.num_exceptional) {
            if (comps != all_comps) return;
            std::vector<const Pattern*> sel = chosen;
            if (!p.use_filters || statically_acyclic(t, sel)) searcher.run(sel);
            return;
        }
        int remaining = p.num_exceptional - e;
        for (std::size_t i = from; i < pats.size(); ++i) {
            const PatInfo& pi = pats[i];
            bool ok = true;
            for (int c = 0; c < nb && ok; ++c)
                if (sum[c] + pi.add[c] > total_cap[c]) ok = false;
            if (!ok) continue;
            for (std::size_t s = 0; s < spairs.size() && ok; ++s) {
                auto [a, b] = spairs[s];
                std::int64_t d = static_cast<std::int64_t>((*pi.pat)[a]) * (*pi.pat)[b];
                if (psum[s] + d > spair_cap[s]) ok = false;
            }
            if (!ok) continue;
            // not enough E's left to reach every untouched component
            std::uint32_t newc = comps | pi.comps;
            if (static_cast<int>(std::popcount(all_comps & ~newc)) > remaining - 1) continue;
            for (int c = 0; c < nb; ++c) sum[c] += pi.add[c];
            for (std::size_t s = 0; s < spairs.size(); ++s) {
                auto [a, b] = spairs[s];
                psum[s] += static_cast<std::int64_t>((*pi.pat)[a]) * (*pi.pat)[b];
            }
            chosen[e] = pi.pat;
            pick(e + 1, i, newc);
            for (int c = 0; c < nb; ++c) sum[c] -= pi.add[c];
            for (std::size_t s = 0; s < spairs.size(); ++s) {
                auto [a, b] = spairs[s];
                psum[s] -= static_cast<std::int64_t>((*pi.pat)[a]) * (*pi.pat)[b];
            }
        }
    };
    if (p.num_exceptional == 0) {
        if (all_comps == 0) {
            std::vector<const Pattern*> none;
            searcher.run(none);
        }
    } else {
        pick(0, 0, 0);
    }
    return {searcher.found.begin(), searcher.found.end()};
}

} // namespace qhd
