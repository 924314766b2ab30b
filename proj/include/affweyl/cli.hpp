#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "affweyl/json_io.hpp"

// Batch front door shared by the command-line tool and the tests: every
// command takes a validated JobConfig and returns an exit status plus a
// machine-readable report. Exit status 0 means every embedded check passed.
// All computations are exhaustive and deterministic, so identical configs
// produce byte-identical reports.

namespace affweyl {

struct JobConfig {
    std::string command;
    std::string family;            // A/B/C/D/E/F/G, empty when cartan_file is set
    int rank = 0;
    std::string cartan_file;
    std::vector<int> J;
    std::vector<int> delta;        // empty = identity
    int length = 0;
    std::vector<int> qs;
    int nmax = 1;
    bool orbits = false;
    int precision = 6;
    std::string format = "json";   // json | csv
    std::string out;               // empty = stdout (handled by the tool)
    std::string group_file;
};

struct CliResult {
    int exit_code = 0;
    std::string output;
};

namespace cli_detail {

inline SpecPtr make_spec(const JobConfig& cfg) {
    if (!cfg.cartan_file.empty())
        return std::make_shared<const CartanSpec>(cartan_from_file(cfg.cartan_file));
    if (cfg.family.empty())
        throw std::invalid_argument("specify --type and --rank or --cartan-file");
    if (cfg.family.size() != 1)
        throw std::invalid_argument("--type must be a single letter A..G");
    return CartanSpec::affine_shared(cfg.family[0], cfg.rank);
}

inline DiagramAut make_delta(const JobConfig& cfg, const SpecPtr& spec) {
    if (cfg.delta.empty()) return DiagramAut::identity(spec);
    return validate_automorphism(spec, cfg.delta);
}

inline std::string render(const json& report, const JobConfig& cfg) {
    if (cfg.format == "csv")
        throw std::invalid_argument("csv output is only available for the sl2 census");
    if (cfg.format != "json")
        throw std::invalid_argument("unknown format: " + cfg.format);
    return report.dump(2) + "\n";
}

} // namespace cli_detail

inline CliResult cmd_ball(const JobConfig& cfg) {
    SpecPtr spec = cli_detail::make_spec(cfg);
    Ball ball = ball_enumerate(spec, cfg.length);
    json layers = json::array();
    for (const auto& layer : ball.layers) {
        json words = json::array();
        for (const WeylElement& w : layer) words.push_back(w.reduced_word());
        layers.push_back(std::move(words));
    }
    json body{{"cartan", to_json(*spec)},
              {"counts", ball.layer_sizes()},
              {"elements", layers},
              {"length", cfg.length},
              {"total", ball.total()}};
    return CliResult{0, cli_detail::render(report_envelope("ball", std::move(body)), cfg)};
}

inline CliResult cmd_sequences(const JobConfig& cfg) {
    SpecPtr spec = cli_detail::make_spec(cfg);
    DiagramAut delta = cli_detail::make_delta(cfg, spec);
    NodeSet J = NodeSet::from_vector(cfg.J);
    std::vector<BedardSequence> seqs = enumerate_sequences(spec, J, delta, cfg.length);
    const int r = spec->node_count() - 1;
    json list = json::array();
    for (const BedardSequence& seq : seqs) {
        json item = to_json(seq);
        item["point_count"] = to_json(point_count(PieceDescriptor::from(seq), r));
        list.push_back(std::move(item));
    }
    json body{{"cartan", to_json(*spec)},
              {"count", static_cast<int64_t>(seqs.size())},
              {"length", cfg.length},
              {"sequences", list}};
    return CliResult{0, cli_detail::render(report_envelope("sequences", std::move(body)), cfg)};
}

inline CliResult cmd_bijection(const JobConfig& cfg) {
    SpecPtr spec = cli_detail::make_spec(cfg);
    DiagramAut delta = cli_detail::make_delta(cfg, spec);
    NodeSet J = NodeSet::from_vector(cfg.J);
    BijectionReport report = bijection_check(spec, J, delta, cfg.length);
    json body{{"cartan", to_json(*spec)}, {"length", cfg.length}, {"report", to_json(report)}};
    return CliResult{report.pass() ? 0 : 1,
                     cli_detail::render(report_envelope("bijection", std::move(body)), cfg)};
}

inline CliResult cmd_pointcount(const JobConfig& cfg) {
    SpecPtr spec = cli_detail::make_spec(cfg);
    DiagramAut delta = cli_detail::make_delta(cfg, spec);
    NodeSet J = NodeSet::from_vector(cfg.J);
    std::vector<BedardSequence> seqs = enumerate_sequences(spec, J, delta, cfg.length);
    const int r = spec->node_count() - 1;
    json list = json::array();
    for (const BedardSequence& seq : seqs) {
        Polynomial p = point_count(PieceDescriptor::from(seq), r);
        json values = json::object();
        for (int q : cfg.qs) values[std::to_string(q)] = p.evaluate(q);
        list.push_back(json{{"point_count", to_json(p)},
                            {"values", values},
                            {"w_inf", seq.w_inf().reduced_word()},
                            {"w_inf_length", seq.w_inf().length()}});
    }
    json body{{"cartan", to_json(*spec)},
              {"length", cfg.length},
              {"pieces", list},
              {"reductive_rank", r}};
    return CliResult{0, cli_detail::render(report_envelope("pointcount", std::move(body)), cfg)};
}

inline CliResult cmd_sl2(const JobConfig& cfg) {
    bool all_pass = true;
    json per_q = json::array();
    std::ostringstream csv;
    std::vector<int> qs = cfg.qs.empty() ? std::vector<int>{2, 3} : cfg.qs;
    for (int q : qs) {
        GF f(q);
        std::vector<CensusRow> rows = census(f, cfg.nmax);
        for (const CensusRow& r : rows) all_pass = all_pass && r.match;
        MatchReport match = match_pieces(q, 2 * cfg.nmax);
        all_pass = all_pass && match.pass;
        json entry{{"census", json::array()}, {"match", to_json(match)}, {"q", q}};
        for (const CensusRow& r : rows) entry["census"].push_back(to_json(r));
        if (cfg.orbits) {
            json orbits = json::array();
            std::vector<PieceLabel> labels{PieceLabel::y0()};
            for (int n = 1; n <= std::min(cfg.nmax, 2); ++n) {
                labels.push_back(PieceLabel::yprime(n));
                labels.push_back(PieceLabel::ydoubleprime(n));
            }
            for (const PieceLabel& label : labels) {
                OrbitCensus oc = orbit_census(f, label, cfg.precision);
                all_pass = all_pass && oc.stable && oc.match;
                orbits.push_back(to_json(oc));
            }
            entry["orbits"] = std::move(orbits);
        }
        per_q.push_back(std::move(entry));
        csv << census_csv(rows);
    }
    if (cfg.format == "csv")
        return CliResult{all_pass ? 0 : 1, csv.str()};
    json body{{"nmax", cfg.nmax}, {"pass", all_pass}, {"results", per_q}};
    return CliResult{all_pass ? 0 : 1,
                     cli_detail::render(report_envelope("sl2", std::move(body)), cfg)};
}

namespace cli_detail {

inline json run_torsor_suite(const std::string& name, const BiTorsor& torsor, bool& all_pass) {
    json taus = json::array();
    bool ok = true;
    for (int e = 0; e < torsor.e_size(); ++e) {
        try {
            std::vector<int> tau = tau_of(torsor, e);
            taus.push_back(json{{"e", e}, {"order", automorphism_order(torsor.L(), tau)}});
        } catch (const std::exception& ex) {
            ok = false;
            taus.push_back(json{{"e", e}, {"error", ex.what()}});
        }
    }
    ComponentBuild build = build_component(torsor, 0);
    bool equivariant = check_equivariance(torsor, 0);
    ok = ok && equivariant;
    std::vector<std::vector<int>> classes = twisted_classes(build.component);
    all_pass = all_pass && ok;
    return json{{"classes", classes},
                {"d", build.component.d},
                {"equivariance", equivariant},
                {"group_order", torsor.L().order()},
                {"name", name},
                {"pass", ok},
                {"semidirect_order", build.semidirect.order()},
                {"taus", taus},
                {"twisted_classes", static_cast<int64_t>(classes.size())}};
}

} // namespace cli_detail

// Built-in suite: the regular torsor on Z4, the transposition coset of A3
// inside S3, and the reflection coset of Z4 inside the dihedral group of
// order 8; plus any user-supplied group file.
inline CliResult cmd_bitorsor(const JobConfig& cfg) {
    bool all_pass = true;
    json cases = json::array();

    cases.push_back(cli_detail::run_torsor_suite(
        "trivial-Z4", BiTorsor::regular(FiniteGroup::cyclic(4)), all_pass));

    FiniteGroup s3 = FiniteGroup::from_permutations({{1, 0, 2}, {0, 2, 1}}, "S3");
    std::vector<int> a3;
    for (int i = 0; i < s3.order(); ++i)
        if (s3.element_order(i) != 2) a3.push_back(i);
    int transposition = -1;
    for (int i = 0; i < s3.order(); ++i)
        if (s3.element_order(i) == 2) { transposition = i; break; }
    cases.push_back(cli_detail::run_torsor_suite("S3/A3", BiTorsor::coset(s3, a3, transposition),
                                                 all_pass));

    FiniteGroup d4 = FiniteGroup::from_permutations({{1, 2, 3, 0}, {1, 0, 3, 2}}, "D4");
    {
        int r = -1;
        for (int i = 0; i < d4.order(); ++i)
            if (d4.element_order(i) == 4) { r = i; break; }
        std::vector<int> z4{d4.identity(), r, d4.mult(r, r), d4.mult(d4.mult(r, r), r)};
        std::sort(z4.begin(), z4.end());
        int reflection = -1;
        for (int i = 0; i < d4.order(); ++i)
            if (std::find(z4.begin(), z4.end(), i) == z4.end()) { reflection = i; break; }
        cases.push_back(cli_detail::run_torsor_suite(
            "D4/Z4", BiTorsor::coset(d4, z4, reflection), all_pass));
    }

    if (!cfg.group_file.empty()) {
        std::ifstream in(cfg.group_file);
        if (!in) throw std::invalid_argument("cannot open group file: " + cfg.group_file);
        json j;
        in >> j;
        TorsorInput input = torsor_from_json(j);
        cases.push_back(cli_detail::run_torsor_suite(input.name, build_torsor(input), all_pass));
    }

    json body{{"cases", cases}, {"pass", all_pass}};
    return CliResult{all_pass ? 0 : 1,
                     cli_detail::render(report_envelope("bitorsor", std::move(body)), cfg)};
}

inline CliResult run_job(const JobConfig& cfg) {
    if (cfg.command == "ball") return cmd_ball(cfg);
    if (cfg.command == "sequences") return cmd_sequences(cfg);
    if (cfg.command == "bijection") return cmd_bijection(cfg);
    if (cfg.command == "pointcount") return cmd_pointcount(cfg);
    if (cfg.command == "sl2") return cmd_sl2(cfg);
    if (cfg.command == "bitorsor") return cmd_bitorsor(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

} // namespace affweyl
