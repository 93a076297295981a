#pragma once

#include <string_view>

#include "anglespace/core.hpp"
#include "anglespace/errors.hpp"

namespace anglespace {

enum class Condition {
    euclidean,
    second_axiom,
    tetragon,
    pentagon,
    hexagon,
    global_compatibility,
    stewart,
};

std::string_view condition_name(Condition c);

struct CheckReport {
    Condition condition;
    bool passed = true;
    std::vector<IdentityViolation> violations;
};

/// Every 3-subset must have angle sum pi (within eps_angle, absolute).
/// Degenerate trigons are included: their forced 0/pi values sum to pi
/// exactly whenever the angle axioms hold.
CheckReport check_euclidean(const AngleSpace& space);

/// For every stored triple (middle point between two ends) and every
/// fourth point not collinear with any pair of the three: the full angle
/// at the fourth point splits additively at the middle, and the two
/// angles at the middle point are supplementary.
CheckReport check_second_axiom(const AngleSpace& space);

/// For every 4-subset with no collinear triple: the four sine-product
/// identities (one per choice of apex against the cycle of the remaining
/// three points) must balance within eps_rel.  A sine below 1e-12 on any
/// factor is itself reported as a near-degenerate violation.
CheckReport check_tetragon_metrizability(const AngleSpace& space);

/// Five-point sine-product identity over every labeling of every
/// 5-subset with no collinear triple.
CheckReport check_pentagon_identities(const AngleSpace& space);

/// Six-point sine-product identity over every labeling of every
/// 6-subset with no collinear triple.
CheckReport check_hexagon_identities(const AngleSpace& space);

/// Pentagon and hexagon identities combined into one verdict.
CheckReport check_global_compatibility(const AngleSpace& space);

/// Aggregate decision for metric reconstruction.
///
/// A space with only collinear triples always admits a compatible metric
/// but never a unique one.  Otherwise the verdict is the conjunction of
/// the four condition reports (for 3-point spaces the last three are
/// vacuous and the trigon angle sum decides alone), and the metric is
/// unique up to one global scale factor.
struct MetrizationDecision {
    bool admits_metric = false;
    bool unique_up_to_scale = false;
    bool trivial = false;
    CheckReport euclidean;
    CheckReport second_axiom;
    CheckReport tetragon;
    CheckReport global;
};

MetrizationDecision admits_metric(const AngleSpace& space);

/// Transversal-length compatibility of a metric.
///
/// For every point quadruple where one point lies metrically between two
/// others and the fourth is not collinear with any pair of the three:
///   d(A,C)^2 d(B,D) + d(A,B)^2 d(C,D) = d(B,C) (d(A,D)^2 + d(B,D) d(C,D))
/// with D between B and C and apex A, within eps_rel.
CheckReport check_stewart(const DistanceMatrix& metric);

/// Raised when a metric fails the transversal-length check; carries the
/// failing report.
struct StewartViolationError : VerdictError {
    explicit StewartViolationError(CheckReport r)
        : VerdictError("metric fails the transversal-length compatibility check"),
          report(std::move(r)) {}
    CheckReport report;
};

/// The unique candidate angle space of a metric: betweenness induced by
/// the metric, angles by the law of cosines.  Entries forced by the
/// induced betweenness are emitted exactly as 0 or pi.  No compatibility
/// gate is applied; the result may violate the angle axioms.
AngleSpace candidate_angles(const DistanceMatrix& metric);

/// candidate_angles guarded by check_stewart; throws StewartViolationError
/// with the failing report instead of constructing an incompatible space.
AngleSpace angles_from_metric(const DistanceMatrix& metric);

} // namespace anglespace
