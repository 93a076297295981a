#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anglespace/core.hpp"

namespace anglespace {

struct AxiomViolation {
    std::string axiom;              // "B1".."B4", "ii", "iii"
    std::vector<std::string> tuple; // points involved, roles in order
    std::string detail;
    std::optional<double> residual;
};

struct AxiomReport {
    bool passed = true;
    std::vector<AxiomViolation> violations;
};

/// Re-verifies the stored relation against the betweenness axioms.
///
/// Distinctness and symmetry closure hold by representation; the middle
/// point conflict (a stored triple together with an end point of it lying
/// between the other two) and strong transitivity are checked explicitly.
/// Strong transitivity: whenever two stored triples share at least two
/// points, every 3-subset of their union must be collinear.
AxiomReport check_betweenness_axioms(const AngleSpace& space);

/// Checks the angle function against the betweenness relation.
///
/// For every vertex b and arm pair {a, c}: the angle must be zero (within
/// eps_angle) when a lies between b and c or c between b and a, pi when b
/// lies between a and c, and strictly above eps_angle otherwise.  For
/// every stored triple, angles seen from an end point toward the middle
/// and toward the far end must agree for every witness point.
AxiomReport check_angle_axioms(const AngleSpace& space);

/// True when every 3-subset of the space is collinear.  Such spaces carry
/// no angular information and admit infinitely many compatible metrics.
/// Requires at least 3 points.
bool is_trivial(const AngleSpace& space);

} // namespace anglespace
