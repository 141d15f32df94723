#pragma once

// Curve configurations in blown-up rational surfaces at the homology level.
// Curves carry squares and roles; intersections are point-labelled events
// with multiplicities. Contracting a (-1)-curve e sends every pair (X,Y)
// through a fresh shared label with multiplicity (e.X)(e.Y), raises squares
// by (e.X)^2, and deposits a multiplicity-m singular event on X when
// m = e.X >= 2. The symplectic filter predicates live here as well.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhd/errors.hpp"

namespace qhd {

enum class CurveRole { Line, Cubic, Contract, Exceptional };

inline std::string to_string(CurveRole r) {
    switch (r) {
        case CurveRole::Line: return "line";
        case CurveRole::Cubic: return "cubic";
        case CurveRole::Contract: return "contract";
        case CurveRole::Exceptional: return "exceptional";
    }
    return "?";
}

struct HomologyClass {
    std::int64_t degree = 0;
    std::vector<std::int64_t> multipliers;
};

// Signature (1, N) pairing: d*d' - sum(m_i * m'_i), short vectors padded.
inline std::int64_t pairing(const HomologyClass& x, const HomologyClass& y) {
    std::int64_t v = x.degree * y.degree;
    std::size_t n = std::min(x.multipliers.size(), y.multipliers.size());
    for (std::size_t i = 0; i < n; ++i) v -= x.multipliers[i] * y.multipliers[i];
    return v;
}

// delta = (cls.cls + K.cls + 2)/2 with K = -3H + sum E_i, the number of
// double-point degenerations of a rational representative.
inline std::int64_t adjunction_delta(const HomologyClass& cls) {
    std::int64_t self = cls.degree * cls.degree;
    std::int64_t k_dot = -3 * cls.degree;
    for (auto m : cls.multipliers) {
        self -= m * m;
        k_dot += m;
    }
    std::int64_t delta = (self + k_dot + 2) / 2;
    if (delta < 0)
        throw non_rational("adjunction delta " + std::to_string(delta) + " < 0");
    return delta;
}

struct ConfigCurve {
    std::string id;
    std::int64_t square = 0;
    CurveRole role = CurveRole::Contract;
    bool alive = true;
};

struct IncidenceEvent {
    int a = 0, b = 0;  // curve indices, a < b
    int label = 0;     // point label
    int mult = 1;
};

struct SingularEvent {
    int label = 0;
    int mult = 2;  // local multiplicity of the point on the curve
};

struct CurveConfiguration {
    std::vector<ConfigCurve> curves;
    std::vector<IncidenceEvent> events;
    std::vector<std::vector<SingularEvent>> singular;
    int l_index = 0;  // the (+1)-line L
    int b2 = 0;       // second Betti number of the ambient manifold
    int next_label = 0;

    // per-curve multiplicities at each blow-down point, in blow-down order
    std::vector<std::vector<std::int64_t>> blowdown_mults;
    std::vector<std::string> blowdown_order;

    int add_curve(const std::string& id, std::int64_t square, CurveRole role) {
        curves.push_back({id, square, role, true});
        singular.emplace_back();
        blowdown_mults.emplace_back(blowdown_order.size(), 0);
        return static_cast<int>(curves.size()) - 1;
    }

    int find(const std::string& id) const {
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].id == id) return static_cast<int>(i);
        throw bad_parameters("no curve named " + id);
    }

    void add_event(int a, int b, int mult, int label = -1) {
        if (a == b) throw bad_parameters("self-events are not incidences");
        if (a > b) std::swap(a, b);
        events.push_back({a, b, label < 0 ? next_label++ : label, mult});
    }

    std::int64_t pair_total(int a, int b) const {
        if (a > b) std::swap(a, b);
        std::int64_t t = 0;
        for (const auto& e : events)
            if (e.a == a && e.b == b) t += e.mult;
        return t;
    }

    std::int64_t meets_l(int i) const { return i == l_index ? 1 : pair_total(l_index, i); }

    std::vector<int> alive_indices() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].alive) out.push_back(static_cast<int>(i));
        return out;
    }

    // Class in the final CP^2 basis: degree = intersection with L,
    // multipliers = multiplicities through the blown-down points.
    HomologyClass homology_class(int i) const {
        return {meets_l(i), blowdown_mults[i]};
    }
};

// Contract the (-1)-curve e (Contract or Exceptional role, disjoint from L,
// no singular events). Returns the new configuration; b2 drops by one.
inline CurveConfiguration blow_down_step(const CurveConfiguration& cfg, int e) {
    if (e < 0 || e >= static_cast<int>(cfg.curves.size()) || !cfg.curves[e].alive)
        throw bad_parameters("no such curve");
    const auto& ce = cfg.curves[e];
    if (ce.role != CurveRole::Contract && ce.role != CurveRole::Exceptional)
        throw not_minus_one("curve " + ce.id + " has a surviving role");
    if (ce.square != -1)
        throw not_minus_one("curve " + ce.id + " has square " + std::to_string(ce.square));
    if (cfg.pair_total(cfg.l_index, e) != 0)
        throw meets_l("curve " + ce.id + " meets L");
    if (!cfg.singular[e].empty())
        throw not_minus_one("curve " + ce.id + " is singular, not an embedded sphere");

    CurveConfiguration out = cfg;
    int point = out.next_label++;
    std::vector<std::int64_t> m(cfg.curves.size(), 0);
    for (std::size_t i = 0; i < cfg.curves.size(); ++i)
        if (cfg.curves[i].alive && static_cast<int>(i) != e)
            m[i] = cfg.pair_total(e, static_cast<int>(i));

    for (std::size_t i = 0; i < cfg.curves.size(); ++i) {
        out.blowdown_mults[i].push_back(m[i]);
        if (!cfg.curves[i].alive || static_cast<int>(i) == e) continue;
        out.curves[i].square += m[i] * m[i];
        if (m[i] >= 2)
            out.singular[i].push_back({point, static_cast<int>(m[i])});
        for (std::size_t j = i + 1; j < cfg.curves.size(); ++j) {
            if (!cfg.curves[j].alive || static_cast<int>(j) == e) continue;
            if (m[i] >= 1 && m[j] >= 1)
                out.add_event(static_cast<int>(i), static_cast<int>(j),
                              static_cast<int>(m[i] * m[j]), point);
        }
    }
    // drop the contracted curve and its events
    out.curves[e].alive = false;
    std::vector<IncidenceEvent> kept;
    for (const auto& ev : out.events)
        if (ev.a != e && ev.b != e) kept.push_back(ev);
    out.events = std::move(kept);
    out.blowdown_order.push_back(ce.id);
    out.b2 -= 1;
    return out;
}

inline CurveConfiguration blow_down_step(const CurveConfiguration& cfg, const std::string& id) {
    return blow_down_step(cfg, cfg.find(id));
}

// ---------------------------------------------------------------------------
// Filter predicates (Lemmas 2.2-2.6 as combinatorial rules).

// No cycle of spheres in the complement of L: the incidence multigraph of
// curves disjoint from L must be a forest; any pair meeting twice (a bigon,
// in particular a tangency) is already a cycle.
inline bool filter_no_cycle(const CurveConfiguration& cfg) {
    auto alive = cfg.alive_indices();
    std::vector<int> off;
    for (int i : alive)
        if (i != cfg.l_index && cfg.meets_l(i) == 0) off.push_back(i);
    std::map<int, int> comp;
    for (int i : off) comp[i] = i;
    std::function<int(int)> root = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (std::size_t ai = 0; ai < off.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < off.size(); ++bi) {
            std::int64_t t = cfg.pair_total(off[ai], off[bi]);
            if (t == 0) continue;
            if (t >= 2) return false;
            int ra = root(off[ai]), rb = root(off[bi]);
            if (ra == rb) return false;
            comp[ra] = rb;
        }
    return true;
}

// No symplectically embedded sphere of nonnegative square away from L.
inline bool filter_no_nonneg_off_L(const CurveConfiguration& cfg) {
    for (int i : cfg.alive_indices())
        if (i != cfg.l_index && cfg.meets_l(i) == 0 && cfg.curves[i].square >= 0) return false;
    return true;
}

// True iff some curve violates (L.C > 0 and C.C = (L.C)^2), i.e. a further
// (-1)-curve away from L is forced to exist.
inline bool filter_exc_curve_forced(const CurveConfiguration& cfg) {
    for (int i : cfg.alive_indices()) {
        if (i == cfg.l_index) continue;
        std::int64_t d = cfg.meets_l(i);
        if (!(d > 0 && cfg.curves[i].square == d * d)) return true;
    }
    return false;
}

// Degree-3 images may carry at most one singular point, of local
// multiplicity exactly 2 (node or (2,3)-cusp); lower degrees must stay
// smooth (an irreducible singular curve meets L at least three times).
inline bool filter_cubic_singularity(const CurveConfiguration& cfg) {
    for (int i : cfg.alive_indices()) {
        std::int64_t d = cfg.meets_l(i);
        const auto& sing = cfg.singular[i];
        if (i == cfg.l_index || d <= 2) {
            if (!sing.empty()) return false;
        } else if (d == 3) {
            if (sing.size() > 1) return false;
            for (const auto& s : sing)
                if (s.mult != 2) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// The nine post-three-blow-downs configurations. The framings (c, c_1..c_k)
// are the dual-graph framings of the long leg; the three blow-downs that
// create the L-tangency raise the head of the leg by 3, so D enters with
// square c+3. Chain curve C_1 meets D, C_{i+1} meets C_i.

enum class DualFamily { C6, C3, C2, A3, B4, B2, C4L, B4L, A4L };

inline std::string to_string(DualFamily f) {
    switch (f) {
        case DualFamily::C6: return "c6";
        case DualFamily::C3: return "c3";
        case DualFamily::C2: return "c2";
        case DualFamily::A3: return "a3";
        case DualFamily::B4: return "b4";
        case DualFamily::B2: return "b2";
        case DualFamily::C4L: return "c4leg";
        case DualFamily::B4L: return "b4leg";
        case DualFamily::A4L: return "a4leg";
    }
    return "?";
}

inline std::optional<DualFamily> dual_family_from_string(const std::string& s) {
    for (DualFamily f : {DualFamily::C6, DualFamily::C3, DualFamily::C2, DualFamily::A3,
                         DualFamily::B4, DualFamily::B2, DualFamily::C4L, DualFamily::B4L,
                         DualFamily::A4L})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

inline int min_chain_length(DualFamily f) {
    switch (f) {
        case DualFamily::C6: return 3;   // b_n <= -6 forces k >= 3
        case DualFamily::C4L: return 0;  // k = 0 is the n = 2 member
        default: return 1;
    }
}

inline CurveConfiguration from_dual_family(DualFamily family, int k, std::int64_t c,
                                           const std::vector<std::int64_t>& chain) {
    if (k < min_chain_length(family))
        throw bad_parameters("chain length " + std::to_string(k) + " below minimum for family " +
                             to_string(family));
    if (static_cast<int>(chain.size()) != k)
        throw bad_parameters("expected " + std::to_string(k) + " chain framings");
    if (c > -1) throw bad_parameters("c must be negative");
    for (auto ci : chain)
        if (ci > -2) throw bad_parameters("chain framings must be <= -2");

    CurveConfiguration cfg;
    int L = cfg.add_curve("L", 1, CurveRole::Line);
    cfg.l_index = L;
    int D = cfg.add_curve("D", c + 3, CurveRole::Cubic);
    int tangency = cfg.next_label++;
    cfg.add_event(L, D, 3, tangency);

    int F = -1;
    if (family == DualFamily::C4L || family == DualFamily::B4L || family == DualFamily::A4L) {
        F = cfg.add_curve("F", 1, CurveRole::Cubic);
        cfg.add_event(L, F, 3, tangency);
        cfg.add_event(F, D, 3, tangency);
    }

    switch (family) {
        case DualFamily::C6:
            break;
        case DualFamily::C3: {
            int G = cfg.add_curve("G", -1, CurveRole::Line);
            int B1 = cfg.add_curve("B1", -2, CurveRole::Contract);
            int B2 = cfg.add_curve("B2", -2, CurveRole::Contract);
            cfg.add_event(L, G, 1);
            cfg.add_event(G, D, 1);
            cfg.add_event(G, B1, 1);
            cfg.add_event(B1, B2, 1);
            break;
        }
        case DualFamily::C2: {
            int prev = cfg.add_curve("A1", -2, CurveRole::Line);
            cfg.add_event(L, prev, 1);
            for (int i = 2; i <= 4; ++i) {
                int a = cfg.add_curve("A" + std::to_string(i), -2, CurveRole::Contract);
                cfg.add_event(prev, a, 1);
                prev = a;
            }
            break;
        }
        case DualFamily::A3: {
            int A = cfg.add_curve("A", -2, CurveRole::Line);
            cfg.add_event(L, A, 1);
            break;
        }
        case DualFamily::B4: {
            int G = cfg.add_curve("G", -1, CurveRole::Line);
            cfg.add_event(L, G, 1);
            cfg.add_event(G, D, 1);
            break;
        }
        case DualFamily::B2: {
            int G = cfg.add_curve("G", -1, CurveRole::Line);
            int A1 = cfg.add_curve("A1", -2, CurveRole::Line);
            int A2 = cfg.add_curve("A2", -2, CurveRole::Contract);
            cfg.add_event(L, G, 1);
            cfg.add_event(G, D, 1);
            cfg.add_event(L, A1, 1);
            cfg.add_event(A1, A2, 1);
            break;
        }
        case DualFamily::C4L: {
            int prev = F;
            for (int i = 1; i <= 4; ++i) {
                int b = cfg.add_curve("B" + std::to_string(i), -2, CurveRole::Contract);
                cfg.add_event(prev, b, 1);
                prev = b;
            }
            break;
        }
        case DualFamily::B4L: {
            int G = cfg.add_curve("G", -1, CurveRole::Line);
            cfg.add_event(L, G, 1);
            cfg.add_event(G, F, 1);
            cfg.add_event(G, D, 1);
            int B1 = cfg.add_curve("B1", -2, CurveRole::Contract);
            int B2 = cfg.add_curve("B2", -2, CurveRole::Contract);
            cfg.add_event(F, B1, 1);
            cfg.add_event(B1, B2, 1);
            break;
        }
        case DualFamily::A4L: {
            int A = cfg.add_curve("A", -2, CurveRole::Line);
            cfg.add_event(L, A, 1);
            int B = cfg.add_curve("B", -2, CurveRole::Contract);
            cfg.add_event(F, B, 1);
            break;
        }
    }

    int prev = D;
    for (int i = 1; i <= k; ++i) {
        int ci = cfg.add_curve("C" + std::to_string(i), chain[i - 1], CurveRole::Contract);
        cfg.add_event(prev, ci, 1);
        prev = ci;
    }
    cfg.b2 = static_cast<int>(cfg.curves.size());
    return cfg;
}

// Exceptional curves come with square -1, disjoint from L, transverse to
// everything: each incidence unit gets its own point label.
inline int add_exceptional(CurveConfiguration& cfg, const std::string& id,
                           const std::vector<std::pair<int, int>>& incidences) {
    int e = cfg.add_curve(id, -1, CurveRole::Exceptional);
    for (auto [curve, mult] : incidences) {
        if (curve == cfg.l_index) throw meets_l("exceptional curves avoid L");
        for (int u = 0; u < mult; ++u) cfg.add_event(e, curve, 1);
    }
    return e;
}

inline nlohmann::json config_to_json(const CurveConfiguration& cfg) {
    nlohmann::json curves = nlohmann::json::array();
    for (int i : cfg.alive_indices()) {
        const auto& c = cfg.curves[i];
        curves.push_back({{"id", c.id}, {"square", c.square}, {"role", to_string(c.role)}});
    }
    std::vector<IncidenceEvent> evs = cfg.events;
    std::sort(evs.begin(), evs.end(), [](const IncidenceEvent& x, const IncidenceEvent& y) {
        return std::tie(x.a, x.b, x.label, x.mult) < std::tie(y.a, y.b, y.label, y.mult);
    });
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : evs)
        events.push_back({{"curves", {cfg.curves[e.a].id, cfg.curves[e.b].id}},
                          {"label", e.label},
                          {"multiplicity", e.mult}});
    return nlohmann::json{{"b2", cfg.b2}, {"curves", curves}, {"events", events}};
}

} // namespace qhd
