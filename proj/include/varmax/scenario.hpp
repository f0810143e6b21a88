#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "varmax/barycenter.hpp"
#include "varmax/circum.hpp"
#include "varmax/jung.hpp"
#include "varmax/minimax.hpp"
#include "varmax/spaces.hpp"

namespace varmax {

using Json = nlohmann::ordered_json;

struct ExplicitY {
    PointCloud points;
};
struct SameAsX {};
struct GridY {
    std::optional<Region> region;  ///< default: bounding box / whole sphere / ball around X
    int resolution = 9;
};
/// Start from X (plus an optional grid) and refine with Frechet means.
struct AutoRefineY {
    std::optional<Region> region;
    int resolution = 0;  ///< 0: no initial grid
    RefinementConfig config;
};
using YSpec = std::variant<ExplicitY, SameAsX, GridY, AutoRefineY>;

struct SolverSpec {
    SolveMethod method = SolveMethod::lp;
    /// Certificate tolerance; also the target gap of fictitious play.
    double tol = 1e-7;
    std::size_t max_iters = 100000;
};

enum class Output { solution, circumradius, jung, certificate };
std::string to_string(Output o);

struct Scenario {
    std::string name;
    PointCloud x;
    YSpec y;
    PayoffKind payoff = PayoffKind::squared_distance;
    std::optional<Eigen::MatrixXd> custom_matrix;
    SolverSpec solver;
    std::vector<Output> outputs{Output::solution};
    JungOptions jung;

    const ModelSpace& space() const { return x.space(); }
    bool wants(Output o) const;
};

/// Validates every field; unknown keys, wrong types and inconsistent
/// dimensions raise ParseError before anything is computed.
Scenario parse_scenario(const Json& doc);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Built-in scenarios: popoviciu, simplex(n), circle(N), sphere_gap,
/// jung_euclidean, jung_spherical. Throws InvalidArgument for unknown names.
Scenario demo_scenario(const std::string& name);
std::vector<std::string> demo_names();

struct ScenarioResult {
    Json json;
    std::optional<PayoffMatrix> payoff;
    std::optional<SaddleSolution> solution;
    std::optional<SaddleCertificate> certificate;
    std::optional<RadiiReport> radii;
    std::optional<JungReport> jung;
    std::vector<double> history;
};

/// Runs the requested pipelines in the order solve, circumradius, jung,
/// certificate and collects one result record.
/// Fictitious play that ends above its target gap raises SolverError.
ScenarioResult run_scenario(const Scenario& scenario);

/// Builds the candidate set and payoff of a scenario without solving.
/// Auto-refined candidate sets are rejected (they depend on the solve).
PayoffMatrix scenario_payoff(const Scenario& scenario);

/// Parses a weight vector file: a JSON array or {"weights": [...]}.
DiscreteMeasure load_measure(const std::filesystem::path& path);

/// certify_saddle of user-supplied measures on the scenario payoff.
Json certificate_json(const SaddleCertificate& cert);

/// Human-readable multi-line summary of a result.
std::string summarize(const Scenario& scenario, const ScenarioResult& result);

/// Writes measures.csv, certificate.csv and history.csv into `dir`.
void export_csv(const ScenarioResult& result, const std::filesystem::path& dir);

/// Compact JSON text with a trailing newline.
std::string dump(const Json& doc);

}  // namespace varmax
