#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "varmax/errors.hpp"
#include "varmax/minimax.hpp"
#include "varmax/scenario.hpp"

namespace {

enum Exit : int { ok = 0, parse = 2, hypothesis = 3, solver = 4, other = 1 };

void emit(const std::string& body, const std::string& out) {
    if (out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << body)) throw varmax::Error("cannot write " + out);
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        return Exit::ok;
    } catch (const varmax::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Exit::parse;
    } catch (const varmax::InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return Exit::parse;
    } catch (const varmax::HypothesisError& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return Exit::hypothesis;
    } catch (const varmax::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return Exit::solver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::other;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance minimax games, Wasserstein circumradii and Jung certificates"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, mu_path, nu_path, demo_name, csv_dir;
    std::optional<double> tol;

    auto* solve = app.add_subcommand("solve", "Run a scenario and print the result JSON");
    solve->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    solve->add_option("--out", out_path, "Write the result JSON here instead of stdout");
    solve->add_option("--tol", tol, "Override solver.tol")->check(CLI::PositiveNumber);

    auto* jung = app.add_subcommand("jung", "Jung certification of the scenario's X");
    jung->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    jung->add_option("--out", out_path, "Write the result JSON here instead of stdout");

    auto* certify = app.add_subcommand("certify", "Check a candidate saddle point (mu, nu)");
    certify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    certify->add_option("--mu", mu_path, "JSON weights on X")->required();
    certify->add_option("--nu", nu_path, "JSON weights on Y")->required();
    certify->add_option("--tol", tol, "Certificate tolerance (default solver.tol)")
        ->check(CLI::PositiveNumber);
    certify->add_option("--out", out_path, "Write the result JSON here instead of stdout");

    auto* demo = app.add_subcommand("demo", "Run a built-in scenario");
    demo->add_option("name", demo_name,
                     "popoviciu | simplex(n) | circle(N) | sphere_gap | jung_euclidean | jung_spherical")
        ->required();
    demo->add_option("--export-csv", csv_dir, "Directory for measures.csv, certificate.csv, history.csv");
    demo->add_option("--out", out_path, "Write the result JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::parse;
    }

    if (solve->parsed()) {
        return guarded([&] {
            varmax::Scenario s = varmax::load_scenario(scenario_path);
            if (tol) s.solver.tol = *tol;
            emit(varmax::dump(varmax::run_scenario(s).json), out_path);
        });
    }
    if (jung->parsed()) {
        return guarded([&] {
            varmax::Scenario s = varmax::load_scenario(scenario_path);
            if (s.space().kind() == varmax::SpaceKind::finite) {
                throw varmax::ParseError("jung needs a euclidean, sphere or hyperbolic space");
            }
            s.outputs = {varmax::Output::jung};
            emit(varmax::dump(varmax::run_scenario(s).json), out_path);
        });
    }
    if (certify->parsed()) {
        return guarded([&] {
            const varmax::Scenario s = varmax::load_scenario(scenario_path);
            const varmax::PayoffMatrix v = varmax::scenario_payoff(s);
            const varmax::DiscreteMeasure mu = varmax::load_measure(mu_path);
            const varmax::DiscreteMeasure nu = varmax::load_measure(nu_path);
            if (mu.size() != v.rows() || nu.size() != v.cols()) {
                throw varmax::ParseError("mu needs " + std::to_string(v.rows()) + " weights and nu " +
                                         std::to_string(v.cols()));
            }
            varmax::Json doc;
            doc["scenario"] = s.name;
            doc["certificate"] =
                varmax::certificate_json(varmax::certify_saddle(v, mu, nu, tol.value_or(s.solver.tol)));
            emit(varmax::dump(doc), out_path);
        });
    }
    return guarded([&] {
        const varmax::Scenario s = varmax::demo_scenario(demo_name);
        const varmax::ScenarioResult r = varmax::run_scenario(s);
        std::cerr << varmax::summarize(s, r);
        if (!csv_dir.empty()) varmax::export_csv(r, csv_dir);
        emit(varmax::dump(r.json), out_path);
    });
}
