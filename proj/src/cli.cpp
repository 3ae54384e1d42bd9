#include "coposolve/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coposolve/report.hpp"

namespace coposolve::cli {
namespace {

namespace fs = std::filesystem;

struct Defaults {
    double tol = Tolerance::kDefault;
    double p = 4.0;
    int resolution = 64;
    int budget = 50;
    int nodes = 129;
    std::uint64_t seed = 0;
};

Json defaults_json() {
    const Defaults d;
    const MuSearchBudget b;
    const SolverConfig s;
    return Json{{"tol", d.tol},
                {"p", d.p},
                {"resolution", d.resolution},
                {"budget", d.budget},
                {"nodes", d.nodes},
                {"seed", d.seed},
                {"lp_margin_tol", b.lp_margin_tol},
                {"mu_floor", b.mu_floor},
                {"residual_tol", s.residual_tol},
                {"negativity_tol", s.negativity_tol},
                {"nontriviality", s.nontriviality},
                {"seed_count", s.seed_count}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t effective_seed(std::uint64_t flag) {
    if (const char* env = std::getenv("COPOSOLVE_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw Error(ErrorKind::Input, "COPOSOLVE_SEED must be a nonnegative integer");
        return v;
    }
    return flag;
}

Report make_report(std::string command) {
    Report r;
    r.command = std::move(command);
    r.defaults = defaults_json();
    return r;
}

Json classify_one(const SymMatrix& B, Tolerance tol) {
    return Json{{"copositivity", classify_copositivity(B, tol)}, {"psd", to_string(check_psd(B, tol))}};
}

Json outcome_json(const NeumannOutcome& o) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, NeumannSolution>) {
                return Json{{"outcome", "Solution"},
                            {"classification", to_string(x.classification)},
                            {"seed_provenance", x.seed_provenance},
                            {"min", x.field.min()},
                            {"max", x.field.max_abs()},
                            {"report", x.report}};
            } else if constexpr (std::is_same_v<T, TrivialOnly>) {
                return Json{{"outcome", "TrivialOnly"}, {"seeds", x.seeds}};
            } else {
                return Json{{"outcome", "Inconclusive"},
                            {"seed_provenance", x.seed_provenance},
                            {"seeds", x.seeds},
                            {"report", x.report}};
            }
        },
        o);
}

void print_error(std::ostream& err, std::string_view kind, const std::string& message) {
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Copositivity classification and Neumann witness solver", "coposolve"};
    app.require_subcommand(1);
    const Defaults d;

    std::string path, csv;
    double tol = d.tol, p = d.p, eps = 0.0, extent = 1.0;
    int dim = 0, budget = d.budget, resolution = d.resolution, nodes = d.nodes;
    std::uint64_t seed = d.seed;
    std::size_t seed_count = SolverConfig{}.seed_count;

    auto* classify = app.add_subcommand("classify", "copositivity verdict and definiteness of a matrix file or directory");
    classify->add_option("file", path, "matrix JSON file or directory of them")->required();
    classify->add_option("--tol", tol, "classification dead-band");

    auto* liouville = app.add_subcommand("liouville", "existence verdict for the entire-space system");
    liouville->add_option("file", path)->required();
    liouville->add_option("--dim", dim, "space dimension N")->required();
    liouville->add_option("--p", p, "nonlinearity degree")->required();
    liouville->add_option("--budget", budget, "cutting-plane rounds");
    liouville->add_option("--seed", seed);
    liouville->add_option("--tol", tol);

    auto* findmu = app.add_subcommand("find-mu", "search for a weight certifying strict (p-1)-copositivity");
    findmu->add_option("file", path)->required();
    findmu->add_option("--p", p)->required();
    findmu->add_option("--resolution", resolution);
    findmu->add_option("--budget", budget);
    findmu->add_option("--seed", seed);

    auto* solve = app.add_subcommand("solve", "nontrivial Neumann solution on a box");
    solve->add_option("file", path)->required();
    solve->add_option("--dim", dim)->required()->check(CLI::Range(1, 2));
    solve->add_option("--p", p)->required();
    solve->add_option("--nodes", nodes, "points per side");
    solve->add_option("--extent", extent, "box side length");
    solve->add_option("--seeds", seed_count, "number of starting fields");
    solve->add_option("--out", csv, "CSV field dump (a .json sidecar is written next to it)")->required();

    auto* bepsilon = app.add_subcommand("bepsilon", "full pipeline on the three-component family B_eps");
    bepsilon->add_option("--eps", eps)->required();
    bepsilon->add_option("--dim", dim)->required();
    bepsilon->add_option("--p", p)->required();
    bepsilon->add_option("--budget", budget);
    bepsilon->add_option("--seed", seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        print_error(err, "Usage", e.what());
        return 2;
    }

    try {
        const Tolerance tolerance(tol);
        MuSearchBudget mb;
        mb.max_iterations = budget;
        mb.resolution = resolution;
        mb.seed = effective_seed(seed);

        if (classify->parsed()) {
            Report r = make_report("classify");
            r.input["tol"] = tol;
            if (fs::is_directory(path)) {
                std::vector<fs::path> files;
                for (const auto& e : fs::directory_iterator(path))
                    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
                std::sort(files.begin(), files.end(),
                          [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
                r.input["directory"] = path;
                r.result = Json::array();
                for (const auto& f : files) {
                    const auto m = parse_matrix_file(read_file(f.string()));
                    Json entry = classify_one(m.beta, tolerance);
                    entry["file"] = f.filename().string();
                    entry["matrix"] = matrix_json(m);
                    r.result.push_back(std::move(entry));
                }
            } else {
                const auto m = parse_matrix_file(read_file(path));
                r.input["matrix"] = matrix_json(m);
                r.result = classify_one(m.beta, tolerance);
            }
            out << serialize(r);
            return 0;
        }

        if (liouville->parsed()) {
            const auto m = parse_matrix_file(read_file(path));
            const ProblemParams params(dim, p);
            Report r = make_report("liouville");
            r.input = Json{{"matrix", matrix_json(m)}, {"dim", dim}, {"p", p}, {"budget", budget}, {"seed", mb.seed},
                           {"tol", tol}};
            r.result = classify_solvability(m.beta, params, mb, tolerance);
            out << serialize(r);
            return 0;
        }

        if (findmu->parsed()) {
            const auto m = parse_matrix_file(read_file(path));
            Report r = make_report("find-mu");
            r.input = Json{{"matrix", matrix_json(m)}, {"p", p}, {"resolution", resolution}, {"budget", budget},
                           {"seed", mb.seed}};
            r.result = find_mu(m.beta, p, mb);
            out << serialize(r);
            return 0;
        }

        if (solve->parsed()) {
            const auto m = parse_matrix_file(read_file(path));
            const ProblemParams params(dim, p);
            const Grid grid(dim, extent, nodes);
            SolverConfig cfg;
            cfg.seed_count = seed_count;
            const auto outcome = mountain_pass_solve(m.beta, params, grid, cfg);

            Report r = make_report("solve");
            r.input = Json{{"matrix", matrix_json(m)}, {"dim", dim}, {"p", p}, {"grid", grid}, {"out", csv},
                           {"seeds", seed_count}};
            r.result = outcome_json(outcome);
            if (const auto* sol = std::get_if<NeumannSolution>(&outcome)) {
                std::ofstream f(csv);
                if (!f) throw Error(ErrorKind::Input, "cannot write " + csv);
                write_csv(f, sol->field, grid);
                std::ofstream side(csv + ".json");
                if (!side) throw Error(ErrorKind::Input, "cannot write " + csv + ".json");
                side << Json{{"schema_version", kSchemaVersion}, {"grid", grid}, {"energy", sol->report}}.dump(2)
                     << '\n';
                r.result["csv"] = csv;
                r.result["sidecar"] = csv + ".json";
            }
            out << serialize(r);
            return 0;
        }

        if (bepsilon->parsed()) {
            const SymMatrix B = b_epsilon(eps);
            const ProblemParams params(dim, p);
            Report r = make_report("bepsilon");
            r.input = Json{{"eps", eps}, {"matrix", Json{{"n", 3}, {"beta", B.to_rows()}}}, {"dim", dim}, {"p", p},
                           {"budget", budget}, {"seed", mb.seed}};
            const auto closed = strict_copositivity_closed_form(B);
            r.result["closed_form"] = Json{{"strictly_copositive", closed.strictly_copositive},
                                           {"diagnostic", closed.diagnostic ? Json(*closed.diagnostic) : Json(nullptr)},
                                           {"expected_diagnostic", 4.0 * eps}};
            r.result["limit_form_at_322"] = b_epsilon_limit_form(ConeVector{3.0, 2.0, 2.0});
            r.result["find_mu"] = find_mu(B, p, mb);
            r.result["solvability"] = classify_solvability(B, params, mb, tolerance);
            out << serialize(r);
            return 0;
        }
    } catch (const Error& e) {
        print_error(err, to_string(e.kind()), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error(err, "Input", e.what());
        return 1;
    }
    return 2;
}

}  // namespace coposolve::cli
