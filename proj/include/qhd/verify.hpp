#pragma once

// Mechanical reproduction of the classification propositions: the expected
// (-1)-curve placements and framing tuples per family, the dual-side graph
// of each configuration, de-normalization back to the resolution graph, and
// the verdict report comparing expected against enumerated solutions.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qhd/embed_search.hpp"

namespace qhd {

enum class PropId { C6, C3PR, C2PR, CASEA, B4PR, CASEB2, C4LEG, B4LEG, A4LEG };

inline std::string to_string(PropId p) {
    switch (p) {
        case PropId::C6: return "p:c6";
        case PropId::C3PR: return "p:c3pr";
        case PropId::C2PR: return "p:c2pr";
        case PropId::CASEA: return "p:casea";
        case PropId::B4PR: return "p:b4pr";
        case PropId::CASEB2: return "p:caseb2";
        case PropId::C4LEG: return "p:c4leg";
        case PropId::B4LEG: return "p:b4leg";
        case PropId::A4LEG: return "p:a4leg";
    }
    return "?";
}

inline std::optional<PropId> prop_from_string(const std::string& s) {
    for (PropId p : {PropId::C6, PropId::C3PR, PropId::C2PR, PropId::CASEA, PropId::B4PR,
                     PropId::CASEB2, PropId::C4LEG, PropId::B4LEG, PropId::A4LEG})
        if (to_string(p) == s) return p;
    return std::nullopt;
}

inline DualFamily prop_family(PropId p) {
    switch (p) {
        case PropId::C6: return DualFamily::C6;
        case PropId::C3PR: return DualFamily::C3;
        case PropId::C2PR: return DualFamily::C2;
        case PropId::CASEA: return DualFamily::A3;
        case PropId::B4PR: return DualFamily::B4;
        case PropId::CASEB2: return DualFamily::B2;
        case PropId::C4LEG: return DualFamily::C4L;
        case PropId::B4LEG: return DualFamily::B4L;
        case PropId::A4LEG: return DualFamily::A4L;
    }
    throw unknown_proposition("bad id");
}

// verify-prop ranges: the proposition's own k-range, capped at 6 by the CLI.
inline std::pair<int, int> prop_default_k_range(PropId p) {
    switch (p) {
        case PropId::C6: return {3, 6};
        case PropId::C4LEG: return {0, 6};
        case PropId::A4LEG: return {2, 6};
        default: return {1, 6};
    }
}

struct ExpectedSolution {
    std::vector<std::vector<std::pair<std::string, int>>> incidences;
    std::int64_t c = 0;
    std::vector<std::int64_t> chain;
};

namespace verify_detail {

using Inc = std::vector<std::pair<std::string, int>>;

inline ExpectedSolution make_expected(std::vector<Inc> incidences, std::int64_t c,
                                      std::vector<std::int64_t> chain) {
    for (auto& inc : incidences) std::sort(inc.begin(), inc.end());
    std::sort(incidences.begin(), incidences.end());
    return {std::move(incidences), c, std::move(chain)};
}

inline std::vector<std::int64_t> flat_chain(int k, std::int64_t value = -2) {
    return std::vector<std::int64_t>(static_cast<std::size_t>(k), value);
}

inline std::string ck(int k) { return "C" + std::to_string(k); }

} // namespace verify_detail

// The framing tuples asserted by the propositions. Tuples are listed only
// where admissible (c <= -1, every c_i <= -2, referenced chain curves
// distinct). The second case of the C2 proposition carries the corrected
// tuple c = -k+2, c1 = -5, c2 = -3 (see the verification notes in README).
inline std::vector<ExpectedSolution> expected_solutions(PropId prop, int k) {
    using namespace verify_detail;
    std::vector<ExpectedSolution> out;
    switch (prop) {
        case PropId::C6: {
            if (k >= 3 && -k + 2 <= -1)
                out.push_back(make_expected({{{"D", 1}, {ck(k), 1}}}, -k + 2, flat_chain(k)));
            break;
        }
        case PropId::C3PR: {
            if (k >= 1)
                out.push_back(make_expected({{{"B1", 1}, {"D", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k - 1, flat_chain(k)));
            if (k >= 3) {
                auto chain = flat_chain(k);
                chain[0] = -5;
                out.push_back(make_expected({{{"B2", 1}, {"C1", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
            }
            break;
        }
        case PropId::C2PR: {
            if (k >= 1)
                out.push_back(make_expected({{{"A2", 1}, {"D", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k - 2, flat_chain(k)));
            if (k >= 3) {
                auto chain = flat_chain(k);
                chain[0] = -5;
                chain[1] = -3;
                out.push_back(make_expected({{{"A4", 1}, {"C1", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
            }
            if (k >= 3) {
                auto chain = flat_chain(k);
                chain[1] = -6;
                out.push_back(make_expected({{{"A4", 1}, {"C2", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
            }
            break;
        }
        case PropId::CASEA: {
            if (k >= 3) {
                auto chain = flat_chain(k);
                chain[1] = -3;
                out.push_back(make_expected({{{"A", 1}, {"C1", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
                out.push_back(make_expected({{{"A", 1}, {"C2", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
            }
            break;
        }
        case PropId::B4PR: {
            if (k >= 3) {
                auto chain = flat_chain(k);
                chain[0] = -3;
                out.push_back(make_expected({{{"G", 1}, {"C1", 1}}, {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
            }
            break;
        }
        case PropId::CASEB2: {
            if (k >= 1) {
                auto chain = flat_chain(k);
                chain[0] = -3;
                out.push_back(make_expected({{{"G", 1}, {"D", 1}, {"A2", 1}},
                                             {{"C1", 1}, {"A1", 1}},
                                             {{"D", 1}, {ck(k), 1}}},
                                            -k, chain));
            }
            if (k >= 3) {
                auto chain = flat_chain(k);
                chain[0] = -3;
                chain[1] = -4;
                out.push_back(make_expected({{{"G", 1}, {"C1", 1}},
                                             {{"A2", 1}, {"C2", 1}},
                                             {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
                out.push_back(make_expected({{{"G", 1}, {"C2", 1}},
                                             {{"A2", 1}, {"C1", 1}},
                                             {{"D", 1}, {ck(k), 1}}},
                                            -k + 2, chain));
            }
            break;
        }
        case PropId::C4LEG: {
            if (k == 0) {
                out.push_back(make_expected({{{"D", 1}, {"F", 1}, {"B4", 1}}, {{"D", 2}}}, -3, {}));
            } else {
                out.push_back(make_expected(
                    {{{"D", 1}, {"F", 1}, {"B4", 1}}, {{"D", 1}, {ck(k), 1}}}, -k - 3,
                    flat_chain(k)));
            }
            break;
        }
        case PropId::B4LEG: {
            if (k >= 1) {
                auto chain = flat_chain(k);
                chain[0] = -3;
                out.push_back(make_expected({{{"D", 1}, {"F", 1}, {"B2", 1}},
                                             {{"F", 1}, {"G", 1}, {"C1", 1}},
                                             {{"D", 1}, {ck(k), 1}}},
                                            -k - 2, chain));
            }
            break;
        }
        case PropId::A4LEG: {
            if (k >= 2) {
                auto chain = flat_chain(k);
                chain[1] = -3;
                out.push_back(make_expected({{{"D", 1}, {"F", 1}, {"B", 1}},
                                             {{"A", 1}, {"F", 1}, {"C1", 1}},
                                             {{"D", 1}, {ck(k), 1}}},
                                            -k, chain));
                out.push_back(make_expected({{{"D", 1}, {"F", 1}, {"B", 1}},
                                             {{"A", 1}, {"F", 1}, {"C2", 1}},
                                             {{"D", 1}, {ck(k), 1}}},
                                            -k, chain));
            }
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dual-side graph of a configuration: star with center -1, the family's
// short legs, and the long leg (c, c_1..c_k).

inline std::vector<std::vector<int>> family_short_legs(DualFamily f) {
    switch (f) {
        case DualFamily::C6: return {{-2}, {-2, -2}};
        case DualFamily::C3: return {{-2}, {-2, -2, -2, -2, -2}};
        case DualFamily::C2: return {{-2, -2}, {-2, -2, -2, -2, -2}};
        case DualFamily::A3: return {{-2, -2}, {-2, -2}};
        case DualFamily::B4: return {{-2}, {-2, -2, -2}};
        case DualFamily::B2: return {{-2, -2, -2}, {-2, -2, -2}};
        case DualFamily::C4L: return {{-2}, {-2, -2, -2, -2, -2}, {-2, -2}};
        case DualFamily::B4L: return {{-2}, {-2, -2, -2}, {-2, -2, -2}};
        case DualFamily::A4L: return {{-2, -2}, {-2, -2}, {-2, -2}};
    }
    throw unknown_family("bad family");
}

inline PlumbingGraph dual_side_graph(DualFamily family, std::int64_t c,
                                     const std::vector<std::int64_t>& chain) {
    auto legs = family_short_legs(family);
    std::vector<int> long_leg{static_cast<int>(c)};
    for (auto ci : chain) long_leg.push_back(static_cast<int>(ci));
    legs.push_back(long_leg);
    return make_star(-1, legs);
}

// Reverse the center normalization (blow down -1 heads of the long leg) and
// dualize; yields the resolution graph classified by the solution, when one
// exists.
inline std::optional<PlumbingGraph> classified_resolution_graph(DualFamily family, std::int64_t c,
                                                                const std::vector<std::int64_t>& chain) {
    auto legs = family_short_legs(family);
    std::vector<int> long_leg{static_cast<int>(c)};
    for (auto ci : chain) long_leg.push_back(static_cast<int>(ci));
    int center = -1;
    while (!long_leg.empty() && long_leg.front() == -1) {
        long_leg.erase(long_leg.begin());
        center += 1;
        if (!long_leg.empty()) long_leg.front() += 1;
    }
    if (long_leg.empty()) return std::nullopt;
    legs.push_back(long_leg);
    try {
        return dual_star(make_star(center, legs));
    } catch (const qhd_error&) {
        return std::nullopt;
    }
}

// rk H_2(R) = |Gamma'|: one CP^2 class plus one blow-up per contraction,
// the three tangency-producing blow-downs included.
inline bool pinkham_count_check(const EmbeddingSolution& sol, const PlumbingGraph& dual_graph) {
    return dual_graph.size() == 1 + 3 + static_cast<int>(sol.order.size());
}

// ---------------------------------------------------------------------------
// Verdict report.

enum class Verdict { ExactMatch, SuperSet, Mismatch };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ExactMatch: return "ExactMatch";
        case Verdict::SuperSet: return "SuperSet";
        case Verdict::Mismatch: return "Mismatch";
    }
    return "?";
}

struct VerificationReport {
    PropId prop = PropId::C6;
    int k = 0;
    Verdict verdict = Verdict::Mismatch;
    std::vector<EmbeddingSolution> found;
    std::vector<ExpectedSolution> expected;
    std::vector<ExpectedSolution> missing;  // expected but not found: hard failure
    std::vector<EmbeddingSolution> extras;  // found beyond the proposition's table
};

inline bool matches(const EmbeddingSolution& sol, const ExpectedSolution& exp) {
    return sol.incidences == exp.incidences && sol.c == exp.c && sol.chain == exp.chain;
}

inline VerificationReport verify_proposition(PropId prop, int k,
                                             std::optional<EmbeddingProblem> problem = {}) {
    VerificationReport rep;
    rep.prop = prop;
    rep.k = k;
    EmbeddingProblem p = problem ? *problem : make_problem(prop_family(prop), k);
    rep.found = enumerate_solutions(p);
    rep.expected = expected_solutions(prop, k);
    for (const auto& exp : rep.expected) {
        bool hit = false;
        for (const auto& sol : rep.found)
            if (matches(sol, exp)) hit = true;
        if (!hit) rep.missing.push_back(exp);
    }
    for (const auto& sol : rep.found) {
        bool hit = false;
        for (const auto& exp : rep.expected)
            if (matches(sol, exp)) hit = true;
        if (!hit) rep.extras.push_back(sol);
    }
    if (!rep.missing.empty())
        rep.verdict = Verdict::Mismatch;
    else if (!rep.extras.empty())
        rep.verdict = Verdict::SuperSet;
    else
        rep.verdict = Verdict::ExactMatch;
    return rep;
}

} // namespace qhd
