#pragma once

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "rph/errors.hpp"
#include "rph/system.hpp"

namespace rph {

/// Parse the JSON system format:
/// {"variables": ["x","y"],
///  "polynomials": [[{"exponents":[0,0],"coefficient":-1.0}, ...], ...]}
inline SparseSystem parse_system(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables") || !doc.contains("polynomials"))
        throw ParseError("expected an object with \"variables\" and \"polynomials\"");

    std::vector<std::string> names;
    for (const auto& v : doc["variables"]) {
        if (!v.is_string()) throw ParseError("variable names must be strings");
        names.push_back(v.get<std::string>());
    }
    if (names.empty()) throw ParseError("empty variable list");

    if (!doc["polynomials"].is_array())
        throw ParseError("\"polynomials\" must be an array");

    std::vector<SparsePolynomial> polys;
    for (const auto& jp : doc["polynomials"]) {
        if (!jp.is_array()) throw ParseError("each polynomial must be an array of terms");
        SparsePolynomial p;
        for (const auto& jt : jp) {
            if (!jt.is_object() || !jt.contains("exponents") || !jt.contains("coefficient"))
                throw ParseError("each term needs \"exponents\" and \"coefficient\"");
            std::vector<int> a;
            for (const auto& je : jt["exponents"]) {
                if (!je.is_number())
                    throw ParseError("exponents must be numbers");
                const double e = je.get<double>();
                if (e < 0 || e != std::floor(e))
                    throw ParseError("exponents must be nonnegative integers");
                a.push_back(static_cast<int>(e));
            }
            if (!jt["coefficient"].is_number())
                throw ParseError("coefficient must be a number");
            const double c = jt["coefficient"].get<double>();
            if (!std::isfinite(c)) throw ParseError("coefficient must be finite");
            p.support.push_back(std::move(a));
            p.coefficients.push_back(c);
        }
        polys.push_back(std::move(p));
    }
    return make_system(std::move(names), std::move(polys));
}

inline nlohmann::json system_to_json(const SparseSystem& f) {
    nlohmann::json doc;
    doc["variables"] = f.variable_names;
    nlohmann::json jpolys = nlohmann::json::array();
    for (const auto& p : f.polynomials) {
        nlohmann::json jp = nlohmann::json::array();
        for (std::size_t t = 0; t < p.support.size(); ++t)
            jp.push_back({{"exponents", p.support[t]}, {"coefficient", p.coefficients[t]}});
        jpolys.push_back(std::move(jp));
    }
    doc["polynomials"] = std::move(jpolys);
    return doc;
}

inline std::string print_system(const SparseSystem& f) { return system_to_json(f).dump(); }

} // namespace rph
