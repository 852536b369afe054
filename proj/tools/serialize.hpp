#pragma once

#include "crpvi/crpvi.hpp"
#include "json.hpp"

#include <string>
#include <vector>

namespace crpvi::io {

using nlohmann::json;

inline json to_json(const Rational& r) { return r.str(); }

// {"conductor": n, "coeffs": [[num, den], ...]} in the power basis of the
// smallest cyclotomic field containing the value.
inline json to_json(const CycloNum& c) {
    const CycloNum v = c.normalized();
    json coeffs = json::array();
    for (const auto& q : v.coeffs()) coeffs.push_back(json::array({q.numerator_str(), q.denominator_str()}));
    return {{"conductor", v.conductor()}, {"coeffs", coeffs}};
}

inline std::string text(const CycloNum& c) {
    std::ostringstream os;
    os << c.normalized();
    return os.str();
}

inline json to_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const Fingerprint& f) {
    return {{"t", {to_json(f.t1), to_json(f.t2), to_json(f.t3)}},
            {"w", to_json(f.w)},
            {"x", to_json(f.x)},
            {"y", to_json(f.y)},
            {"p", to_json(f.p)},
            {"q", to_json(f.q)}};
}

inline json to_json(const Theta& t) {
    return {{"tuple", t.str()}, {"values", {t.v[0].str(), t.v[1].str(), t.v[2].str(), t.v[3].str()}}};
}

inline json to_json(const PviParams& p) {
    return {{"alpha", p.alpha.str()}, {"beta", p.beta.str()}, {"gamma", p.gamma.str()}, {"delta", p.delta.str()}};
}

inline json to_json(const LambdaMu& lm) {
    return {{"lambda", {lm.lambda[0].str(), lm.lambda[1].str(), lm.lambda[2].str()}},
            {"mu", {lm.mu[0].str(), lm.mu[1].str(), lm.mu[2].str()}},
            {"sum_discrepancy", lm.sum_discrepancy().str()}};
}

inline json to_json(const OrbitReport& r) {
    json types = json::array();
    for (const auto& p : r.cycle_types) types.push_back(p);
    json out{{"group", r.kind == BraidGroupKind::pure ? "P3" : "B3"},
             {"size", r.branches()},
             {"cycle_types", types},
             {"transitive", r.pure_transitive},
             {"genus", r.genus ? json(*r.genus) : json(nullptr)}};
    return out;
}

inline json to_json(const ThetaTableRow& row) {
    json cands = json::array();
    for (const auto& c : row.candidates) cands.push_back(c.str());
    return {{"group", row.spec.name()},
            {"degrees", row.degrees},
            {"lambda_mu", to_json(row.lm)},
            {"canonical", row.canonical.str()},
            {"tabulated", row.tabulated ? json(row.tabulated->str()) : json(nullptr)},
            {"matches", row.matches},
            {"candidates", cands},
            {"message", row.message}};
}

inline json to_json(const CheckResult& c) {
    return {{"check", c.name}, {"ok", c.ok}, {"cases", c.cases}, {"failures", c.failures}, {"detail", c.detail}};
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

using CsvTable = std::vector<std::vector<std::string>>;

inline std::string render_csv(const CsvTable& t) {
    std::string out;
    for (const auto& row : t) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i]);
        out += '\n';
    }
    return out;
}

}  // namespace crpvi::io
