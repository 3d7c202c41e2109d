#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>

#include "rph/cells.hpp"
#include "rph/krawczyk.hpp"
#include "rph/patchwork.hpp"
#include "rph/tracker.hpp"

namespace rph {

inline std::string hex_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

inline nlohmann::json cells_to_json(const std::vector<MixedCell>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json jc;
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [p, q] : c.pairs) pairs.push_back({p, q});
        jc["pairs"] = std::move(pairs);
        nlohmann::json normal = nlohmann::json::array();
        for (const auto& num : c.normal.num)
            normal.push_back(num.str() + "/" + c.normal.den.str());
        jc["normal"] = std::move(normal);
        jc["volume"] = c.volume;
        arr.push_back(std::move(jc));
    }
    return arr;
}

inline nlohmann::json generators_to_json(const std::vector<DualConeGenerator>& gens) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : gens) {
        nlohmann::json jg;
        jg["zeta"] = g.zeta;
        jg["origin"] = {{"cell", g.cell_index},
                        {"polynomial", g.poly_index},
                        {"excluded_point", g.excluded_point}};
        arr.push_back(std::move(jg));
    }
    return arr;
}

inline nlohmann::json certificate_to_json(const PatchworkCertificate& cert) {
    nlohmann::json doc;
    doc["certified"] = cert.certified;
    if (cert.real_root_count) doc["real_root_count"] = *cert.real_root_count;
    nlohmann::json margins = nlohmann::json::array();
    for (const auto& m : cert.margins)
        margins.push_back({{"lhs", m.lhs}, {"rhs", m.rhs}, {"slack", m.slack}});
    doc["margins"] = std::move(margins);
    return doc;
}

inline nlohmann::json binomials_to_json(const std::vector<BinomialSystem>& bins,
                                        const std::vector<std::string>& names) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : bins) {
        nlohmann::json jb;
        jb["source_cell"] = b.source_cell;
        jb["exponent_matrix"] = b.exponent_matrix;
        jb["rhs"] = b.rhs;
        nlohmann::json display = nlohmann::json::array();
        for (const auto& terms : b.display_terms) {
            std::vector<std::pair<double, std::vector<int>>> pair_terms;
            for (const auto& t : terms) pair_terms.emplace_back(t.coefficient, t.exponents);
            display.push_back(format_terms(pair_terms, names));
        }
        jb["display"] = std::move(display);
        arr.push_back(std::move(jb));
    }
    return arr;
}

inline nlohmann::json outcome_to_json(const CertificateOutcome& o) {
    nlohmann::json jo;
    jo["certified"] = o.certified;
    jo["shrink_factor"] = o.shrink_factor;
    jo["radius"] = o.radius_used;
    nlohmann::json box = nlohmann::json::array();
    for (const auto& c : o.box.components)
        box.push_back({hex_float(c.lo), hex_float(c.hi)});
    jo["box"] = std::move(box);
    if (!o.reason.empty()) jo["reason"] = o.reason;
    return jo;
}

inline nlohmann::json summary_to_json(const TrackSummary& s) {
    nlohmann::json doc;
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& x : s.solutions) {
        nlohmann::json v = nlohmann::json::array();
        for (int i = 0; i < x.size(); ++i) v.push_back(x[i]);
        sols.push_back(std::move(v));
    }
    doc["solutions"] = std::move(sols);
    nlohmann::json statuses = nlohmann::json::array();
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& p : s.paths) {
        statuses.push_back(to_string(p.result.status));
        residuals.push_back(p.result.final_residual);
    }
    doc["statuses"] = std::move(statuses);
    doc["residuals"] = std::move(residuals);
    doc["certified_input"] = s.certified_input;
    if (s.certified) doc["certified"] = *s.certified;
    doc["warnings"] = s.warnings;
    return doc;
}

} // namespace rph
