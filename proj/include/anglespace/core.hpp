#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anglespace/errors.hpp"

namespace anglespace {

using Index = std::size_t;

/// Numeric comparison thresholds shared by every check.
///
/// eps_angle gates angle-equation checks (radians, absolute),
/// eps_rel gates distance and sine-product identities,
/// eps_det gates determinant sign classification; determinant tolerances
/// are scaled by the matrix magnitude raised to the matrix order.
struct ToleranceConfig {
    double eps_angle = 1e-9;
    double eps_rel = 1e-9;
    double eps_det = 1e-9;

    /// Throws PreconditionError unless every epsilon is in (0, 1e-2].
    void validate() const;

    /// Effective determinant threshold for an order-n matrix whose largest
    /// absolute entry is max_abs.
    double det_tolerance(std::size_t order, double max_abs) const;
};

/// Normalized residual used in every identity report:
/// |lhs - rhs| / max(1, |lhs|, |rhs|).
double identity_residual(double lhs, double rhs);

/// One failed numeric identity: the points involved and both sides.
struct IdentityViolation {
    std::vector<std::string> tuple;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Ternary betweenness relation on point indices.
///
/// A stored triple (a, b, c) asserts that b lies between a and c.  The
/// relation is kept symmetry-closed: (a, b, c) and (c, b, a) are the same
/// statement and are stored once, normalized so that a < c.
class BetweennessRelation {
public:
    using Triple = std::array<Index, 3>;

    /// Inserts "b between a and c".  Returns false if already present.
    /// Points must be three distinct indices.
    bool insert(Index a, Index b, Index c);

    /// True when b lies between a and c (in either stored orientation).
    bool between(Index a, Index b, Index c) const;

    /// True when some ordering of {p, q, r} is stored, i.e. the three
    /// points lie on a common line.
    bool collinear(Index p, Index q, Index r) const;

    bool empty() const { return triples_.empty(); }
    std::size_t size() const { return triples_.size(); }

    /// Normalized triples (a < c), canonically ordered.
    const std::set<Triple>& triples() const { return triples_; }

private:
    std::set<Triple> triples_;
};

/// Total angle function on ordered triples (a, b, c) with a != b, b != c.
///
/// The vertex is the middle argument.  Values are radians in [0, pi].
/// Storage is symmetry-closed: angle(a, b, c) == angle(c, b, a), and
/// angle(a, b, a) == 0 for every a != b.
class AngleTable {
public:
    explicit AngleTable(Index point_count);

    void set(Index a, Index b, Index c, double theta);
    bool is_set(Index a, Index b, Index c) const;

    double angle(Index a, Index b, Index c) const;
    double sin_angle(Index a, Index b, Index c) const;

    Index point_count() const { return n_; }

private:
    std::size_t slot(Index a, Index b, Index c) const;

    Index n_;
    std::vector<double> theta_;
    std::vector<double> sin_;
};

/// A finite angle space: labeled points, a betweenness relation, and a
/// total angle function.  Construction validates well-formedness only;
/// the deeper axioms are separate checks so that deliberately broken
/// spaces can still be built and inspected.
class AngleSpace {
public:
    Index size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Index i) const;
    Index index(const std::string& label) const;
    bool has(const std::string& label) const;

    const BetweennessRelation& betweenness() const { return between_; }
    const AngleTable& angles() const { return angles_; }
    const ToleranceConfig& tol() const { return tol_; }

    double angle(Index a, Index b, Index c) const { return angles_.angle(a, b, c); }
    double sin_angle(Index a, Index b, Index c) const { return angles_.sin_angle(a, b, c); }
    double angle(const std::string& a, const std::string& b, const std::string& c) const;
    double sin_angle(const std::string& a, const std::string& b, const std::string& c) const;

    bool collinear_triple(Index p, Index q, Index r) const { return between_.collinear(p, q, r); }

private:
    AngleSpace(std::vector<std::string> labels, BetweennessRelation between,
               AngleTable angles, ToleranceConfig tol);

    friend AngleSpace build_angle_space(std::vector<std::string>,
                                        const std::vector<std::array<std::string, 3>>&,
                                        const std::vector<struct AngleEntryInput>&,
                                        ToleranceConfig);

    std::vector<std::string> labels_;
    BetweennessRelation between_;
    AngleTable angles_;
    ToleranceConfig tol_;
};

/// One angle assignment: vertex b, arms a and c.
struct AngleEntryInput {
    std::string a;
    std::string b;
    std::string c;
    double theta_radians = 0.0;
};

/// Validating constructor for AngleSpace.
///
/// Points are deduplicated-checked and sorted lexicographically; indices
/// in the result refer to that canonical order.  Betweenness triples are
/// symmetry-closed automatically.  Rejected inputs: duplicate or empty
/// labels, references to unknown points, non-distinct betweenness triples,
/// a triple together with its middle-swapped form, angles outside [0, pi],
/// conflicting symmetric angle entries (beyond eps_angle), nonzero angles
/// with equal arms, and missing angle entries.
AngleSpace build_angle_space(std::vector<std::string> points,
                             const std::vector<std::array<std::string, 3>>& betweenness_triples,
                             const std::vector<AngleEntryInput>& angle_entries,
                             ToleranceConfig tol = {});

/// Set collinearity: every 3-subset of the given points (>= 3, distinct,
/// known) lies on a common line of the relation.
bool collinear(const AngleSpace& space, const std::vector<std::string>& points);

/// All n-point subsets in lexicographic index order.  With nondegenerate
/// set, subsets containing a collinear triple are dropped.
std::vector<std::vector<Index>> enumerate_ngons(const AngleSpace& space, std::size_t n,
                                                bool nondegenerate);

struct DistanceEntryInput {
    std::string p;
    std::string q;
    double d = 0.0;
};

struct TriangleViolation {
    std::vector<std::string> tuple; // a, b, c with d(a,c) > d(a,b) + d(b,c)
    double lhs = 0.0;               // d(a,c)
    double rhs = 0.0;               // d(a,b) + d(b,c)
    double residual = 0.0;
};

/// Symmetric positive distance matrix over labeled points.
///
/// Symmetry and a zero diagonal hold by representation.  Positivity of
/// off-diagonal entries is enforced at construction.  The triangle
/// inequality is checked and reported, never silently assumed.
class DistanceMatrix {
public:
    static DistanceMatrix from_entries(std::vector<std::string> points,
                                       const std::vector<DistanceEntryInput>& entries,
                                       ToleranceConfig tol = {});

    /// Points in canonical order with a full row-major distance grid.
    DistanceMatrix(std::vector<std::string> labels, std::vector<double> grid,
                   ToleranceConfig tol = {});

    Index size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Index i) const;
    Index index(const std::string& label) const;

    double d(Index i, Index j) const { return grid_[i * labels_.size() + j]; }
    double d(const std::string& p, const std::string& q) const;
    double max_distance() const;

    const ToleranceConfig& tol() const { return tol_; }

    /// Triples (a, b, c) with d(a,c) exceeding d(a,b) + d(b,c) beyond
    /// eps_rel, canonically ordered.
    std::vector<TriangleViolation> triangle_violations() const;

    /// Betweenness induced by the metric: b between a and c when
    /// d(a,b) + d(b,c) matches d(a,c) within eps_rel relative.
    BetweennessRelation metric_betweenness() const;

    DistanceMatrix scaled(double factor) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> grid_;
    ToleranceConfig tol_;
};

namespace detail {

/// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(Index n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<Index> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        fn(const_cast<const std::vector<Index>&>(pick));
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

} // namespace detail

} // namespace anglespace
