#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "affweyl/bedard.hpp"
#include "affweyl/bitorsor.hpp"
#include "affweyl/sl2_model.hpp"

// Canonical JSON forms. nlohmann::json keeps object keys sorted, so dumping
// the same data always yields byte-identical output.

namespace affweyl {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

inline json to_json(const CartanSpec& spec) {
    json rows = json::array();
    for (int i = 0; i < spec.node_count(); ++i) {
        json row = json::array();
        for (int j = 0; j < spec.node_count(); ++j) row.push_back(spec.entry(i, j));
        rows.push_back(std::move(row));
    }
    json nodes = json::array();
    for (int i = 0; i < spec.node_count(); ++i) nodes.push_back(i);
    return json{{"cartan", rows}, {"name", spec.name()}, {"nodes", nodes}};
}

inline json to_json(const WeylElement& w) {
    json rows = json::array();
    const IntMatrix& m = w.matrix();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"length", w.length()}, {"matrix", rows}, {"word", w.reduced_word()}};
}

inline json to_json(const Polynomial& p) { return json(p.coefficients()); }

inline json to_json(const ParabolicTable& t) {
    json elems = json::array();
    for (const WeylElement& w : t.elements) elems.push_back(w.reduced_word());
    return json{{"J", t.J.to_vector()},
                {"elements", elems},
                {"longest", t.longest.reduced_word()},
                {"n_positive", t.n_positive},
                {"order", static_cast<int64_t>(t.elements.size())},
                {"poincare", to_json(t.poincare)}};
}

inline json to_json(const BedardSequence& seq) {
    json stages = json::array();
    for (const BedardStage& st : seq.stages())
        stages.push_back(json{{"J", st.J.to_vector()}, {"w", st.w.reduced_word()}});
    PieceDescriptor d = PieceDescriptor::from(seq);
    json twist = json::array();
    for (auto [j, k] : d.twist) twist.push_back(json::array({j, k}));
    return json{{"J", seq.J().to_vector()},
                {"J_inf", seq.J_inf().to_vector()},
                {"delta", seq.delta().perm()},
                {"stages", stages},
                {"twist", twist},
                {"twist_order", d.twist_order},
                {"w_inf", seq.w_inf().reduced_word()},
                {"w_inf_length", d.w_inf_length}};
}

inline json to_json(const BijectionReport& r) {
    return json{{"in_target", r.in_target},
                {"injective", r.injective},
                {"pass", r.pass()},
                {"roundtrip", r.roundtrip},
                {"sequence_count", r.sequence_count},
                {"surjective", r.surjective},
                {"target_count", r.target_count},
                {"violations", r.violations}};
}

inline json to_json(const CensusRow& row) {
    return json{{"count", row.count},       {"formula_value", row.formula_value},
                {"label", row.label.to_string()}, {"match", row.match},
                {"n", row.n},               {"q", row.q}};
}

inline json to_json(const MatchReport& r) {
    json rows = json::array();
    for (const MatchRow& row : r.rows)
        rows.push_back(json{{"census_count", row.census_count},
                            {"label", row.label.to_string()},
                            {"match", row.match},
                            {"point_count", to_json(row.polynomial)},
                            {"value_at_q", row.polynomial_at_q},
                            {"w_length", row.w_length},
                            {"word", row.word}});
    return json{{"length_bound", r.length_bound}, {"pass", r.pass}, {"pieces", rows}, {"q", r.q}};
}

inline json to_json(const OrbitCensus& oc) {
    json j{{"counts_per_precision", oc.counts},
           {"label", oc.label.to_string()},
           {"match", oc.match},
           {"predicted", oc.predicted},
           {"q", oc.q},
           {"status", oc.stable ? "stable" : "inconclusive"}};
    if (oc.stable) {
        j["orbit_count"] = oc.orbit_count;
        j["stabilized_at_precision"] = oc.stabilized_at;
    }
    return j;
}

inline std::string census_csv(const std::vector<CensusRow>& rows) {
    std::ostringstream out;
    out << "q,n,label,count,formula_value,match\n";
    for (const CensusRow& r : rows)
        out << r.q << ',' << r.n << ',' << r.label.to_string() << ',' << r.count << ','
            << r.formula_value << ',' << (r.match ? "true" : "false") << '\n';
    return out.str();
}

inline json report_envelope(const std::string& command, json body) {
    body["command"] = command;
    body["schema_version"] = kSchemaVersion;
    return body;
}

// --- input parsing ---------------------------------------------------------

inline CartanSpec cartan_from_json(const json& j) {
    const json& rows = j.contains("cartan") ? j.at("cartan") : j;
    const int n = static_cast<int>(rows.size());
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows.at(i).size()) != n)
            throw std::invalid_argument("cartan matrix must be square");
        for (int jj = 0; jj < n; ++jj) m.at(i, jj) = rows.at(i).at(jj).get<int64_t>();
    }
    return CartanSpec(std::move(m), j.contains("name") ? j.at("name").get<std::string>()
                                                       : std::string("custom"));
}

inline CartanSpec cartan_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cartan file: " + path);
    json j;
    in >> j;
    return cartan_from_json(j);
}

// A finite group given either by a multiplication table or by permutation
// generators, with an optional subgroup + coset describing a bitorsor.
struct TorsorInput {
    std::string name;
    FiniteGroup gamma;
    std::vector<int> subgroup;  // element indices in gamma; empty means E = gamma
    int coset_rep = -1;
};

inline TorsorInput torsor_from_json(const json& j) {
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : "user";
    FiniteGroup gamma = [&]() {
        if (j.contains("table")) {
            const json& rows = j.at("table");
            const int n = static_cast<int>(rows.size());
            std::vector<int> table;
            table.reserve(static_cast<size_t>(n) * n);
            for (const auto& row : rows)
                for (const auto& v : row) table.push_back(v.get<int>());
            return FiniteGroup(n, std::move(table), name);
        }
        if (j.contains("permutations"))
            return FiniteGroup::from_permutations(
                j.at("permutations").get<std::vector<std::vector<int>>>(), name);
        throw std::invalid_argument("group input needs a 'table' or 'permutations' field");
    }();
    TorsorInput input{name, std::move(gamma), {}, -1};
    if (j.contains("subgroup")) {
        input.subgroup = j.at("subgroup").get<std::vector<int>>();
        if (!j.contains("coset_rep"))
            throw std::invalid_argument("torsor input with 'subgroup' needs 'coset_rep'");
        input.coset_rep = j.at("coset_rep").get<int>();
    }
    return input;
}

inline BiTorsor build_torsor(const TorsorInput& input) {
    if (input.subgroup.empty()) return BiTorsor::regular(input.gamma);
    return BiTorsor::coset(input.gamma, input.subgroup, input.coset_rep);
}

} // namespace affweyl
