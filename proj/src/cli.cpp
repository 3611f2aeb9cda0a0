#include "bezout/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bezout/examples.hpp"
#include "bezout/io.hpp"
#include "bezout/solver.hpp"
#include "bezout/spectral.hpp"
#include "bezout/verify.hpp"

namespace bezout::cli {

namespace {

struct Options {
    std::string input;
    std::string output;
    std::string config_path;
    std::string data_path;
    std::string example_name;
    int order = 0;
    int degree = 0;
    double tol_positivity = 0;
    double tol_factor = 0;
    bool cross_check = false;
    std::uint64_t seed = 0;
};

void addCommonFlags(CLI::App* sub, Options& o) {
    sub->add_option("--input", o.input, "input coefficient JSON file")->required();
    sub->add_option("--output", o.output, "output JSON path (default derived from the input name)");
    sub->add_option("--order", o.order, "operator section size N");
    sub->add_option("--degree", o.degree, "output truncation degree");
    sub->add_option("--tol-positivity", o.tol_positivity, "strict positivity gate");
    sub->add_option("--tol-factor", o.tol_factor, "spectral factorization residual gate");
    sub->add_flag("--cross-check", o.cross_check,
                  "shadow every structured Gram solve with the dense oracle");
    sub->add_option("--seed", o.seed, "seed for randomized checks");
    sub->add_option("--config", o.config_path, "JSON config file; explicit flags win");
}

void applyConfigFile(SolveConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("malformed JSON in config '" + path + "': " + e.what());
    }
    auto geti = [&](const char* k, int& dst) {
        if (j.contains(k)) dst = j[k].get<int>();
    };
    auto getd = [&](const char* k, double& dst) {
        if (j.contains(k)) dst = j[k].get<double>();
    };
    try {
        geti("section_blocks", cfg.section_blocks);
        geti("output_degree", cfg.output_degree);
        getd("positivity_tol", cfg.positivity_tol);
        getd("rank_tol", cfg.rank_tol);
        getd("factor_tol", cfg.factor_tol);
        getd("solution_tol", cfg.solution_tol);
        if (j.contains("cross_check")) cfg.cross_check = j["cross_check"].get<bool>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        geti("grid_boundary", cfg.grid_boundary);
        geti("grid_interior", cfg.grid_interior);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("bad value in config '" + path + "': " + e.what());
    }
}

SolveConfig buildConfig(const CLI::App* sub, const Options& o) {
    SolveConfig cfg;
    if (!o.config_path.empty()) applyConfigFile(cfg, o.config_path);
    if (sub->count("--order")) cfg.section_blocks = o.order;
    if (sub->count("--degree")) cfg.output_degree = o.degree;
    if (sub->count("--tol-positivity")) cfg.positivity_tol = o.tol_positivity;
    if (sub->count("--tol-factor")) cfg.factor_tol = o.tol_factor;
    if (sub->count("--cross-check")) cfg.cross_check = true;
    if (sub->count("--seed")) cfg.seed = o.seed;
    return cfg;
}

std::string defaultOutput(const std::string& input, const char* suffix) {
    std::filesystem::path p(input);
    p.replace_extension();
    return p.string() + suffix;
}

void printNotSolvable(std::ostream& err, const NotPositive& e) {
    err << "not solvable: " << e.what() << "\n";
    if (!e.margin_ladder.empty()) {
        err << "margin ladder (section size -> smallest Gram eigenvalue):\n";
        for (const auto& [n, margin] : e.margin_ladder)
            err << "  N=" << std::setw(5) << std::left << n << " margin="
                << std::scientific << std::setprecision(6) << margin << "\n";
    }
}

int runSolve(const CLI::App* sub, const Options& o, std::ostream& out) {
    CoeffSeries g = io::readSeriesFile(o.input);
    SolveConfig cfg = buildConfig(sub, o);
    BezoutData d = solve(g, cfg);
    std::string path = o.output.empty() ? defaultOutput(o.input, ".bezout.json") : o.output;
    io::writeJsonFile(path, io::toJson(d));
    out << "solved " << d.m() << "x" << d.p() << " symbol: margin "
        << std::scientific << std::setprecision(3) << d.margin << ", tail(Y) "
        << d.diagnostics.tail_y << ", constant-inverse residual "
        << d.diagnostics.h0_identity << "\n";
    out << "solution data written to " << path << "\n";
    return 0;
}

int runFactorize(const CLI::App* sub, const Options& o, std::ostream& out) {
    CoeffSeries r = io::readSeriesFile(o.input);
    SolveConfig cfg = buildConfig(sub, o);
    SpectralFactor f = spectralFactorize(r, cfg);
    std::string path = o.output.empty() ? defaultOutput(o.input, ".factor.json") : o.output;
    io::writeJsonFile(path, io::toJson(f));
    out << "factorized: residual " << std::scientific << std::setprecision(3) << f.residual
        << " at section " << f.section_used << "\n";
    out << "factor written to " << path << "\n";
    return 0;
}

int runVerify(const CLI::App* sub, const Options& o, std::ostream& out) {
    CoeffSeries g = io::readSeriesFile(o.input);
    SolveConfig cfg = buildConfig(sub, o);
    std::optional<BezoutData> data;
    if (!o.data_path.empty()) data = io::readBezoutDataFile(o.data_path);
    VerifyReport rep = runAll(g, cfg, data ? &*data : nullptr);
    std::string path = o.output.empty() ? defaultOutput(o.input, ".report.json") : o.output;
    io::writeJsonFile(path, io::toJson(rep));
    out << formatReport(rep);
    out << "report written to " << path << "\n";
    const CheckResult* pre = rep.find("precondition-positivity");
    if (pre && !pre->pass) return 2;
    return rep.allPass() ? 0 : 3;
}

int runExample(const Options& o, std::ostream& out) {
    CoeffSeries g = builtinExample(o.example_name);
    std::string path = o.output.empty() ? o.example_name + ".json" : o.output;
    io::writeJsonFile(path, io::toJson(g));
    out << "example '" << o.example_name << "' written to " << path << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"constructive solver for the matrix corona equation G(z) X(z) = I on the unit disc"};
    app.require_subcommand(1);

    Options so, fo, vo, eo;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "compute the full solution parametrization data");
    addCommonFlags(solve_cmd, so);
    CLI::App* fact_cmd = app.add_subcommand(
        "factorize", "canonical spectral factorization of a Hermitian Laurent symbol");
    addCommonFlags(fact_cmd, fo);
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the identity check suite");
    addCommonFlags(verify_cmd, vo);
    verify_cmd->add_option("--data", vo.data_path,
                           "verify this solution data file instead of re-solving");
    CLI::App* ex_cmd = app.add_subcommand("example", "write a built-in example symbol");
    ex_cmd->add_option("name", eo.example_name,
                       "one of: constant, polynomial_1x2, square_identity")
        ->required();
    ex_cmd->add_option("--output", eo.output, "output path (default <name>.json)");

    std::vector<const char*> argv;
    argv.push_back("bezout");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(solve_cmd)) return runSolve(solve_cmd, so, out);
        if (app.got_subcommand(fact_cmd)) return runFactorize(fact_cmd, fo, out);
        if (app.got_subcommand(verify_cmd)) return runVerify(verify_cmd, vo, out);
        if (app.got_subcommand(ex_cmd)) return runExample(eo, out);
    } catch (const NotPositive& e) {
        printNotSolvable(err, e);
        return 2;
    } catch (const RankError& e) {
        err << "not solvable: " << e.what() << "\n";
        return 2;
    } catch (const Singular& e) {
        err << "not solvable: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        err << "not solvable: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "not solvable: " << e.what() << "\n";
        return 2;
    } catch (const UnknownExample& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace bezout::cli
