#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anglespace/axioms.hpp"
#include "anglespace/compat.hpp"
#include "anglespace/core.hpp"
#include "anglespace/embed.hpp"
#include "anglespace/errors.hpp"
#include "anglespace/io.hpp"
#include "anglespace/metrize.hpp"

namespace {

using anglespace::ToleranceConfig;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw anglespace::PreconditionError("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

ToleranceConfig tolerance_from_env() {
    ToleranceConfig tol;
    const char* env = std::getenv("ANGLESPACE_TOLERANCE");
    if (env == nullptr || *env == '\0') return tol;
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(env, &consumed);
    } catch (const std::exception&) {
        throw anglespace::PreconditionError("ANGLESPACE_TOLERANCE is not a number");
    }
    if (consumed != std::string(env).size()) {
        throw anglespace::PreconditionError("ANGLESPACE_TOLERANCE is not a number");
    }
    tol.eps_angle = tol.eps_rel = tol.eps_det = value;
    tol.validate();
    return tol;
}

json violations_json(const std::vector<anglespace::IdentityViolation>& violations) {
    json out = json::array();
    for (const auto& v : violations) {
        json item;
        item["tuple"] = v.tuple;
        item["lhs"] = v.lhs;
        item["rhs"] = v.rhs;
        item["residual"] = v.residual;
        out.push_back(std::move(item));
    }
    return out;
}

json axiom_violations_json(const std::vector<anglespace::AxiomViolation>& violations) {
    json out = json::array();
    for (const auto& v : violations) {
        json item;
        item["axiom"] = v.axiom;
        item["tuple"] = v.tuple;
        item["detail"] = v.detail;
        if (v.residual) item["residual"] = *v.residual;
        out.push_back(std::move(item));
    }
    return out;
}

json check_json(const anglespace::CheckReport& report) {
    json item;
    item["name"] = std::string(anglespace::condition_name(report.condition));
    item["passed"] = report.passed;
    item["violations"] = violations_json(report.violations);
    return item;
}

void describe_check(const std::string& name, bool passed, std::size_t violation_count) {
    std::cerr << "  " << name << ": " << (passed ? "pass" : "FAIL");
    if (violation_count > 0) std::cerr << " (" << violation_count << " violations)";
    std::cerr << '\n';
}

int cmd_validate(const std::string& input, const ToleranceConfig& tol) {
    const anglespace::AngleSpace space = anglespace::parse_space(read_input(input), tol);
    const anglespace::AxiomReport betweenness = anglespace::check_betweenness_axioms(space);
    const anglespace::AxiomReport angles = anglespace::check_angle_axioms(space);
    const anglespace::MetrizationDecision decision = anglespace::admits_metric(space);
    const bool passed = betweenness.passed && angles.passed && decision.admits_metric;

    json report;
    report["schema_version"] = 1;
    report["passed"] = passed;
    report["trivial"] = decision.trivial;
    report["admits_metric"] = decision.admits_metric;
    report["unique_up_to_scale"] = decision.unique_up_to_scale;
    json checks = json::array();
    {
        json item;
        item["name"] = "betweenness_axioms";
        item["passed"] = betweenness.passed;
        item["violations"] = axiom_violations_json(betweenness.violations);
        checks.push_back(std::move(item));
    }
    {
        json item;
        item["name"] = "angle_axioms";
        item["passed"] = angles.passed;
        item["violations"] = axiom_violations_json(angles.violations);
        checks.push_back(std::move(item));
    }
    for (const anglespace::CheckReport* part : {&decision.euclidean, &decision.second_axiom,
                                                &decision.tetragon, &decision.global}) {
        checks.push_back(check_json(*part));
    }
    report["checks"] = std::move(checks);
    std::cout << report.dump(2) << '\n';

    std::cerr << "validate: " << space.size() << " points\n";
    describe_check("betweenness_axioms", betweenness.passed, betweenness.violations.size());
    describe_check("angle_axioms", angles.passed, angles.violations.size());
    for (const auto& v : angles.violations) {
        if (v.axiom == "iii") {
            std::cerr << "    first axiom of collinearity fails at (";
            for (std::size_t i = 0; i < v.tuple.size(); ++i) {
                std::cerr << (i ? "," : "") << v.tuple[i];
            }
            std::cerr << ")\n";
            break;
        }
    }
    for (const anglespace::CheckReport* part : {&decision.euclidean, &decision.second_axiom,
                                                &decision.tetragon, &decision.global}) {
        describe_check(std::string(anglespace::condition_name(part->condition)), part->passed,
                       part->violations.size());
    }
    if (decision.trivial) std::cerr << "  note: trivial space (every triple collinear)\n";
    std::cerr << "verdict: "
              << (passed ? (decision.unique_up_to_scale
                                ? "admits a euclidean-compatible metric, unique up to scale"
                                : "admits euclidean-compatible metrics (not unique)")
                         : "checks failed")
              << '\n';
    return passed ? kExitPass : kExitCheckFailed;
}

int cmd_metrize(const std::string& input, std::string base_flag, double scale,
                const ToleranceConfig& tol) {
    const anglespace::AngleSpace space = anglespace::parse_space(read_input(input), tol);
    anglespace::BasePair base;
    base.lambda = scale;
    if (base_flag.empty()) {
        if (space.size() < 2) throw anglespace::PreconditionError("space has fewer than 2 points");
        base.a = space.labels()[0];
        base.b = space.labels()[1];
    } else {
        const auto comma = base_flag.find(',');
        if (comma == std::string::npos) {
            throw anglespace::PreconditionError("--base expects two labels: A,B");
        }
        base.a = base_flag.substr(0, comma);
        base.b = base_flag.substr(comma + 1);
    }
    const anglespace::DistanceMatrix metric = anglespace::metrize(space, base);
    std::cout << anglespace::serialize_metric(metric);
    std::cerr << "metrize: base d(" << base.a << "," << base.b << ") = " << base.lambda << '\n';
    return kExitPass;
}

int cmd_embed(const std::string& input, std::size_t dim, double scale,
              const ToleranceConfig& tol) {
    const anglespace::AngleSpace space = anglespace::parse_space(read_input(input), tol);
    const anglespace::Coordinates coords = anglespace::conformal_embed(space, dim, scale);
    std::cout << anglespace::serialize_coordinates(coords);
    std::cerr << "embed: " << coords.labels.size() << " points in dimension " << dim
              << ", max distance residual " << coords.max_distance_residual << '\n';
    return kExitPass;
}

int cmd_from_metric(const std::string& input, const ToleranceConfig& tol) {
    const anglespace::DistanceMatrix metric = anglespace::parse_metric(read_input(input), tol);
    try {
        const anglespace::AngleSpace space = anglespace::angles_from_metric(metric);
        std::cout << anglespace::serialize_space(space);
        std::cerr << "from-metric: derived angle table for " << space.size() << " points\n";
        return kExitPass;
    } catch (const anglespace::StewartViolationError& e) {
        json report;
        report["schema_version"] = 1;
        report["passed"] = false;
        report["checks"] = json::array({check_json(e.report)});
        std::cout << report.dump(2) << '\n';
        std::cerr << "from-metric: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

int cmd_gen(std::size_t dim, std::size_t points, std::uint64_t seed, std::size_t collinear,
            const std::string& emit, const ToleranceConfig& tol) {
    const anglespace::GeneratedInstance instance =
        anglespace::gen_euclidean(dim, points, seed, collinear, tol);
    if (emit == "all") {
        std::cout << anglespace::serialize_generated(instance);
    } else if (emit == "space") {
        std::cout << anglespace::serialize_space(instance.space);
    } else if (emit == "metric") {
        std::cout << anglespace::serialize_metric(instance.metric);
    } else {
        std::cout << anglespace::serialize_coordinates(instance.coordinates);
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite angle spaces: axioms, compatibility checks, metric reconstruction, "
                 "and euclidean embeddings"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string base_flag;
    double scale = 1.0;
    std::size_t dim = 2;
    std::size_t points = 4;
    std::uint64_t seed = 0;
    std::size_t collinear = 0;
    std::string emit = "all";

    CLI::App* validate = app.add_subcommand(
        "validate", "Check a space document against the axioms and compatibility conditions");
    validate->add_option("input", input, "space document file, or - for stdin");

    CLI::App* metrize = app.add_subcommand(
        "metrize", "Reconstruct the distance matrix of a space document");
    metrize->add_option("input", input, "space document file, or - for stdin");
    metrize->add_option("--base", base_flag, "base pair as A,B (default: first two points)");
    metrize->add_option("--scale", scale, "distance assigned to the base pair");

    CLI::App* embed = app.add_subcommand(
        "embed", "Realize a space document as coordinates in a euclidean space");
    embed->add_option("input", input, "space document file, or - for stdin");
    embed->add_option("--dim", dim, "ambient dimension")->required();
    embed->add_option("--scale", scale, "distance assigned to the base pair");

    CLI::App* from_metric = app.add_subcommand(
        "from-metric", "Derive the angle table of a metric document");
    from_metric->add_option("input", input, "metric document file, or - for stdin");

    CLI::App* gen = app.add_subcommand(
        "gen", "Generate a seeded euclidean instance (coordinates, metric, space)");
    gen->add_option("--dim", dim, "sample dimension")->required();
    gen->add_option("--points", points, "number of points")->required();
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--collinear", collinear, "number of planted collinear triples");
    gen->add_option("--emit", emit, "which document to print")
        ->check(CLI::IsMember({"all", "space", "metric", "coordinates"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const ToleranceConfig tol = tolerance_from_env();
        if (validate->parsed()) return cmd_validate(input, tol);
        if (metrize->parsed()) return cmd_metrize(input, base_flag, scale, tol);
        if (embed->parsed()) return cmd_embed(input, dim, scale, tol);
        if (from_metric->parsed()) return cmd_from_metric(input, tol);
        if (gen->parsed()) return cmd_gen(dim, points, seed, collinear, emit, tol);
        return kExitUsage;
    } catch (const anglespace::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const anglespace::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const anglespace::VerdictError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitUsage;
    }
}
