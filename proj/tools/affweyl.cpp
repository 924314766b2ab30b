// Command-line front end. Configs are accepted both as flags and as a JSON
// config file (--config); flags override file values. Exit status is 0
// exactly when every embedded check passed.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "affweyl/cli.hpp"

namespace {

using affweyl::JobConfig;

void load_config_file(const std::string& path, JobConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    auto get = [&](const char* key, auto& target) {
        if (j.contains(key)) j.at(key).get_to(target);
    };
    get("type", cfg.family);
    get("rank", cfg.rank);
    get("cartan_file", cfg.cartan_file);
    get("J", cfg.J);
    get("delta", cfg.delta);
    get("length", cfg.length);
    get("q", cfg.qs);
    get("nmax", cfg.nmax);
    get("orbits", cfg.orbits);
    get("precision", cfg.precision);
    get("format", cfg.format);
    get("out", cfg.out);
    get("group_file", cfg.group_file);
}

int emit(const affweyl::CliResult& result, const JobConfig& cfg) {
    if (cfg.out.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw std::invalid_argument("cannot open output file: " + cfg.out);
        out << result.output;
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics of affine Weyl groups, Bedard sequences,"
                 " piece point counts, bitorsors, and the rank-one lattice model"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        sub->add_option("--out", cfg.out, "write the report to a file instead of stdout");
        sub->add_option("--format", cfg.format, "json or csv (csv for sl2 census)");
    };
    auto add_cartan = [&](CLI::App* sub) {
        sub->add_option("--type", cfg.family, "affine family letter A..G");
        sub->add_option("--rank", cfg.rank, "rank of the finite diagram");
        sub->add_option("--cartan-file", cfg.cartan_file, "JSON file with a Cartan matrix");
    };

    CLI::App* ball = app.add_subcommand("ball", "enumerate the length ball");
    add_common(ball);
    add_cartan(ball);
    ball->add_option("--length", cfg.length, "length bound");

    CLI::App* sequences = app.add_subcommand("sequences", "enumerate T(J, delta)");
    add_common(sequences);
    add_cartan(sequences);
    sequences->add_option("--J", cfg.J, "nodes of J")->delimiter(',');
    sequences->add_option("--delta", cfg.delta, "diagram automorphism as an image list")
        ->delimiter(',');
    sequences->add_option("--length", cfg.length, "bound on l(w_inf)");

    CLI::App* bijection = app.add_subcommand("bijection", "certify the sequence bijection");
    add_common(bijection);
    add_cartan(bijection);
    bijection->add_option("--J", cfg.J, "nodes of J")->delimiter(',');
    bijection->add_option("--delta", cfg.delta, "diagram automorphism as an image list")
        ->delimiter(',');
    bijection->add_option("--length", cfg.length, "truncation length");

    CLI::App* pointcount = app.add_subcommand("pointcount", "piece point-count polynomials");
    add_common(pointcount);
    add_cartan(pointcount);
    pointcount->add_option("--J", cfg.J, "nodes of J")->delimiter(',');
    pointcount->add_option("--delta", cfg.delta, "diagram automorphism as an image list")
        ->delimiter(',');
    pointcount->add_option("--length", cfg.length, "bound on l(w_inf)");
    pointcount->add_option("--q", cfg.qs, "evaluate at these prime powers")->delimiter(',');

    CLI::App* sl2 = app.add_subcommand("sl2", "lattice-model census and piece matching");
    add_common(sl2);
    sl2->add_option("--q", cfg.qs, "field sizes (default 2,3)")->delimiter(',');
    sl2->add_option("--nmax", cfg.nmax, "largest lattice level");
    sl2->add_flag("--orbits", cfg.orbits, "also run the orbit census");
    sl2->add_option("--precision", cfg.precision, "orbit census precision window");

    CLI::App* bitorsor = app.add_subcommand("bitorsor", "run the bitorsor suite");
    add_common(bitorsor);
    bitorsor->add_option("--group-file", cfg.group_file, "JSON group/torsor input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        if (!config_path.empty()) {
            // re-parse flags on top of the file values
            JobConfig file_cfg;
            file_cfg.command = cfg.command;
            load_config_file(config_path, file_cfg);
            auto keep_flag = [&](const std::string& flag, auto& live, auto& from_file) {
                const CLI::Option* opt = sub->get_option_no_throw(flag);
                if (!opt || opt->count() == 0) live = from_file;
            };
            keep_flag("--type", cfg.family, file_cfg.family);
            keep_flag("--rank", cfg.rank, file_cfg.rank);
            keep_flag("--cartan-file", cfg.cartan_file, file_cfg.cartan_file);
            keep_flag("--J", cfg.J, file_cfg.J);
            keep_flag("--delta", cfg.delta, file_cfg.delta);
            keep_flag("--length", cfg.length, file_cfg.length);
            keep_flag("--q", cfg.qs, file_cfg.qs);
            keep_flag("--nmax", cfg.nmax, file_cfg.nmax);
            keep_flag("--orbits", cfg.orbits, file_cfg.orbits);
            keep_flag("--precision", cfg.precision, file_cfg.precision);
            keep_flag("--format", cfg.format, file_cfg.format);
            keep_flag("--out", cfg.out, file_cfg.out);
            keep_flag("--group-file", cfg.group_file, file_cfg.group_file);
        }
        return emit(affweyl::run_job(cfg), cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
