#pragma once

// JSON serialization for tables, linear maps, bialgebras, and reports.
// Schemas (all matrix entries are exact rationals written as "p/q" strings):
//   LinearMap        {"rows": R, "cols": C, "entries": [[row, col, "p/q"], ...]}
//                    entries emitted in column-major order for determinism
//   TernaryTable     {"order": n, "values": [t(0,0,0), t(0,0,1), ...]}
//                    flattened with index (x*n + y)*n + z
//   TernaryBialgebra {"dim": d, "T": <map>, "delta": <map>, "epsilon": <map>
//                     [, "eta": <map>]}
//   CohomologyReport {"dim", "c1_dim", ..., "h2"} (all integers)
//   dim-2 solutions  {"basis_order": [...], "count": N, "maps": [[8 labels]]}
//                    with labels from {"0", "x", "-x", "y", "-y"}

#include <json.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdq/cohomology.hpp"
#include "tdq/core.hpp"
#include "tdq/linear.hpp"
#include "tdq/linear_map.hpp"
#include "tdq/rational.hpp"

namespace tdq {

inline nlohmann::json linear_map_to_json(const LinearMap& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c))
            entries.push_back({e.row, c, rational_to_string(e.value)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline LinearMap linear_map_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
        throw std::invalid_argument("linear map JSON needs rows/cols");
    LinearMap m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.value("entries", nlohmann::json::array())) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("linear map entry must be [row, col, value]");
        Rational v = e[2].is_string() ? parse_rational(e[2].get<std::string>())
                                      : Rational(e[2].get<long long>());
        m.set(e[0].get<int>(), e[1].get<int>(), v);
    }
    return m;
}

inline nlohmann::json table_to_json(const TernaryTable& t) {
    const int n = t.order();
    nlohmann::json values = nlohmann::json::array();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) values.push_back(t.at(x, y, z));
    return {{"order", n}, {"values", values}};
}

inline TernaryTable table_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("values"))
        throw std::invalid_argument("table JSON needs order/values");
    const int n = j.at("order").get<int>();
    const auto& values = j.at("values");
    if (static_cast<int>(values.size()) != n * n * n)
        throw std::invalid_argument("table JSON: values length must be order^3");
    TernaryTable t = TernaryTable::filled(n);
    int idx = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) t.set(x, y, z, values[idx++].get<int>());
    return t;
}

inline nlohmann::json bialgebra_to_json(const TernaryBialgebra& b) {
    nlohmann::json j = {{"dim", b.dim},
                        {"T", linear_map_to_json(b.T)},
                        {"delta", linear_map_to_json(b.coalgebra.delta)},
                        {"epsilon", linear_map_to_json(b.coalgebra.epsilon)}};
    if (b.eta) j["eta"] = linear_map_to_json(*b.eta);
    return j;
}

inline TernaryBialgebra bialgebra_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("T") || !j.contains("delta") ||
        !j.contains("epsilon"))
        throw std::invalid_argument("bialgebra JSON needs dim/T/delta/epsilon");
    const int d = j.at("dim").get<int>();
    Coalgebra c(d, linear_map_from_json(j.at("delta")), linear_map_from_json(j.at("epsilon")));
    std::optional<LinearMap> eta;
    if (j.contains("eta")) eta = linear_map_from_json(j.at("eta"));
    return TernaryBialgebra(d, linear_map_from_json(j.at("T")), c, eta);
}

inline nlohmann::json cohomology_report_to_json(const CohomologyReport& r) {
    return {{"dim", r.dim},         {"c1_dim", r.c1_dim},   {"c2_dim", r.c2_dim},
            {"c3_dim", r.c3_dim},   {"z1_mult", r.z1_mult}, {"z1_comult", r.z1_comult},
            {"h1", r.h1},           {"rank_d1", r.rank_d1}, {"rank_d2", r.rank_d2},
            {"z2", r.z2},           {"h2", r.h2}};
}

// Same vocabulary as the shipped reference columns: value index ->
// {"0", "x", "-x", "y", "-y"}; map order is the canonical sorted order.
inline nlohmann::json dim2_solutions_to_json(const std::vector<Dim2Solution>& solutions) {
    static const char* kLabels[5] = {"0", "x", "-x", "y", "-y"};
    nlohmann::json maps = nlohmann::json::array();
    for (const auto& s : solutions) {
        nlohmann::json row = nlohmann::json::array();
        for (int code : s.codes) row.push_back(kLabels[code]);
        maps.push_back(row);
    }
    return {{"basis_order",
             {"xxx", "xxy", "xyx", "xyy", "yxx", "yxy", "yyx", "yyy"}},
            {"count", solutions.size()},
            {"maps", maps}};
}

inline int dim2_code_from_label(const std::string& label) {
    static const std::array<std::pair<const char*, int>, 6> kCodes = {
        {{"0", 0}, {"x", 1}, {"+x", 1}, {"-x", 2}, {"y", 3}, {"-y", 4}}};
    for (const auto& [name, code] : kCodes)
        if (label == name) return code;
    if (label == "+y") return 3;
    throw std::invalid_argument("unknown dim-2 value label: " + label);
}

} // namespace tdq
