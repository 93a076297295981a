#pragma once

#include "anglespace/core.hpp"
#include "anglespace/errors.hpp"

namespace anglespace {

/// Reference pair fixing the global scale: d(a, b) = lambda.
struct BasePair {
    std::string a;
    std::string b;
    double lambda = 1.0;
};

/// Raised when a reconstructed metric disagrees with the angle table
/// beyond tolerance; names the worst offending trigon.
struct MetrizeError : VerdictError {
    MetrizeError(std::string message, std::vector<std::string> t, double r)
        : VerdictError(std::move(message)), tuple(std::move(t)), residual(r) {}
    std::vector<std::string> tuple;
    double residual = 0.0;
};

/// The distance between c and d induced by fixing d(base.a, base.b) =
/// base.lambda, evaluated through chains of law-of-sines ratios.
///
/// Requires that {a, b, c, d} are not all collinear.  When the preferred
/// evaluation trigon is degenerate the computation falls back to the
/// alternative trigons through the other base point, and as a last resort
/// routes through an auxiliary point off both lines.
double distance_from_base(const AngleSpace& space, const BasePair& base,
                          const std::string& c, const std::string& d);

/// Reconstructs the full distance matrix of a space from its angles.
///
/// Pairs collinear with the base pair are measured through a canonical
/// auxiliary point off the shared line; when a second auxiliary candidate
/// exists the two routes are required to agree within eps_rel.  The
/// result is verified against the law of cosines on every trigon before
/// it is returned.  Spaces with only collinear triples are rejected:
/// their metric is not determined by the angles.
DistanceMatrix metrize(const AngleSpace& space, const BasePair& base);

/// Worst-case agreement between an angle table and a metric.
struct CompatibilityResiduals {
    double max_law_of_cosines_residual = 0.0;
    std::vector<std::string> worst_law_of_cosines_tuple;
    double max_law_of_sines_residual = 0.0;
    std::vector<std::string> worst_law_of_sines_tuple;
};

/// Law-of-cosines residuals compare each distance with the one implied by
/// the opposite angle; law-of-sines residuals compare cross products
/// d(b,c) sin(at b) against d(a,c) sin(at a) within each trigon.
CompatibilityResiduals residuals(const AngleSpace& space, const DistanceMatrix& metric);

} // namespace anglespace
