#pragma once

// Declarative star-graph templates for the QHD^3 / QHD^4 classes: center
// framing and leg entries are affine expressions in named nonnegative
// integer parameters, legs are lists of (value, repeat) pairs. The shipped
// file carries the families derived from the classification propositions;
// figures 1(a)-(c) are listed as unavailable and reported as a warning.

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhd/errors.hpp"
#include "qhd/plumbing.hpp"

namespace qhd {

struct AffineExpr {
    std::int64_t constant = 0;
    std::map<std::string, std::int64_t> coeffs;

    std::int64_t eval(const std::map<std::string, std::int64_t>& assignment) const {
        std::int64_t v = constant;
        for (auto& [name, c] : coeffs) {
            auto it = assignment.find(name);
            if (it == assignment.end()) throw bad_parameters("unbound parameter " + name);
            v += c * it->second;
        }
        return v;
    }
};

struct TemplateLegEntry {
    AffineExpr value;
    AffineExpr repeat; // must evaluate >= 0
};

struct QhdParam {
    std::string name;
    std::int64_t min = 0;
};

struct QhdTemplate {
    std::string label;   // e.g. "qhd3.f" or "qhd3.e[p=0]"
    std::string figure;  // figure reference, informational
    std::vector<QhdParam> params;
    AffineExpr center;
    std::vector<std::vector<TemplateLegEntry>> legs;
};

struct TemplateSet {
    std::vector<QhdTemplate> templates;
    std::vector<std::string> unavailable; // figure labels with no shipped data
};

inline PlumbingGraph instantiate(const QhdTemplate& t,
                                 const std::map<std::string, std::int64_t>& assignment) {
    for (const auto& p : t.params) {
        auto it = assignment.find(p.name);
        if (it == assignment.end() || it->second < p.min)
            throw bad_parameters("parameter " + p.name + " missing or below minimum");
    }
    std::vector<std::vector<int>> legs;
    for (const auto& leg : t.legs) {
        std::vector<int> framings;
        for (const auto& entry : leg) {
            std::int64_t rep = entry.repeat.eval(assignment);
            if (rep < 0) throw bad_parameters("negative repeat count in template " + t.label);
            std::int64_t val = entry.value.eval(assignment);
            for (std::int64_t i = 0; i < rep; ++i) framings.push_back(static_cast<int>(val));
        }
        if (framings.empty()) throw bad_parameters("empty leg in template " + t.label);
        legs.push_back(std::move(framings));
    }
    return make_star(static_cast<int>(t.center.eval(assignment)), legs);
}

namespace detail {

inline AffineExpr affine_from_json(const nlohmann::json& j) {
    AffineExpr e;
    if (j.is_number_integer()) {
        e.constant = j.get<std::int64_t>();
        return e;
    }
    e.constant = j.value("const", 0);
    if (j.contains("coeffs"))
        for (auto& [k, v] : j.at("coeffs").items()) e.coeffs[k] = v.get<std::int64_t>();
    return e;
}

inline nlohmann::json affine_to_json(const AffineExpr& e) {
    if (e.coeffs.empty()) return e.constant;
    nlohmann::json j{{"const", e.constant}};
    nlohmann::json c = nlohmann::json::object();
    for (auto& [k, v] : e.coeffs) c[k] = v;
    j["coeffs"] = c;
    return j;
}

} // namespace detail

inline TemplateSet load_templates(std::istream& in) {
    nlohmann::json j;
    in >> j;
    TemplateSet set;
    for (const auto& tj : j.at("templates")) {
        QhdTemplate t;
        t.label = tj.at("label").get<std::string>();
        t.figure = tj.value("figure", "");
        if (tj.contains("params"))
            for (const auto& pj : tj.at("params"))
                t.params.push_back({pj.at("name").get<std::string>(), pj.value("min", 0)});
        t.center = detail::affine_from_json(tj.at("center"));
        for (const auto& lj : tj.at("legs")) {
            std::vector<TemplateLegEntry> leg;
            for (const auto& ej : lj) {
                TemplateLegEntry e;
                e.value = detail::affine_from_json(ej.at("value"));
                e.repeat = ej.contains("repeat") ? detail::affine_from_json(ej.at("repeat"))
                                                 : AffineExpr{1, {}};
                leg.push_back(e);
            }
            t.legs.push_back(std::move(leg));
        }
        set.templates.push_back(std::move(t));
    }
    if (j.contains("unavailable"))
        for (const auto& u : j.at("unavailable")) set.unavailable.push_back(u.get<std::string>());
    return set;
}

inline TemplateSet load_templates_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open template file " + path);
    return load_templates(in);
}

struct TemplateMatch {
    std::string label;
    std::map<std::string, std::int64_t> assignment;
};

// All (template, parameters) pairs whose instantiation is isomorphic to g.
// The parameter search is bounded by the vertex count of g.
inline std::vector<TemplateMatch> recognize_qhd(const PlumbingGraph& g, const TemplateSet& set) {
    std::vector<TemplateMatch> matches;
    std::int64_t bound = g.size();
    for (const auto& t : set.templates) {
        std::vector<std::map<std::string, std::int64_t>> assignments;
        std::map<std::string, std::int64_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == t.params.size()) {
                assignments.push_back(cur);
                return;
            }
            for (std::int64_t v = t.params[i].min; v <= bound; ++v) {
                cur[t.params[i].name] = v;
                rec(i + 1);
            }
            cur.erase(t.params[i].name);
        };
        rec(0);
        for (const auto& a : assignments) {
            PlumbingGraph inst;
            try {
                inst = instantiate(t, a);
            } catch (const qhd_error&) {
                continue;
            }
            if (inst.size() != g.size()) continue;
            if (is_isomorphic(inst, g)) matches.push_back({t.label, a});
        }
    }
    return matches;
}

} // namespace qhd
