#pragma once

#include "anglespace/compat.hpp"
#include "anglespace/core.hpp"
#include "anglespace/errors.hpp"

#include <optional>

namespace anglespace {

struct EmbedError : VerdictError {
    enum class Reason {
        not_flat,          // negative Gram eigenvalue or volume beyond tolerance
        rank_exceeded,     // metric needs more than n dimensions
        residual_exceeded, // realization failed its distance guarantee
        angle_mismatch,    // realized angles drift from the table
        not_embeddable,    // reconstructed metric fails the flatness criterion
        incompatible,      // space does not admit a euclidean-compatible metric
    };
    EmbedError(Reason why, std::string message)
        : VerdictError(std::move(message)), reason(why) {}
    Reason reason;
};

/// ½(d(x0,xi)² + d(x0,xj)² − d(xi,xj)²): the inner product of the edge
/// vectors x0→xi and x0→xj in any euclidean realization.
double gram(const DistanceMatrix& metric, Index x0, Index xi, Index xj);
double gram(const DistanceMatrix& metric, const std::string& x0, const std::string& xi,
            const std::string& xj);

struct SimplexVolume {
    double det = 0.0;    // Gram determinant of the edge vectors at the first point
    bool real = true;    // det ≥ −tolerance: the volume is a real number
    double volume = 0.0; // (1/n!)·√det when real, NaN otherwise
};

/// Squared-volume determinant of the simplex spanned by the given points,
/// based at the first one.  Invariant under reordering up to tolerance.
SimplexVolume simplex_volume_sq(const DistanceMatrix& metric,
                                const std::vector<std::string>& simplex);

struct SimplexWitness {
    std::size_t order = 0;           // number of edge vectors (simplex has order+1 points)
    std::vector<std::string> points; // canonical order
    double value = 0.0;              // the Gram determinant
};

struct FlatnessReport {
    // Largest k such that every j-simplex with j ≤ k has a real volume.
    std::size_t k_flat_up_to = 0;
    // Largest k ≤ k_flat_up_to with a strictly positive volume somewhere.
    std::size_t dimension = 0;
    std::optional<SimplexWitness> attaining;   // simplex realizing the dimension
    std::vector<SimplexWitness> offending;     // non-real volumes at k_flat_up_to + 1
};

/// Exhaustive volume scan over all (k+1)-subsets for k = 1..k_max.
FlatnessReport flatness_and_dimension(const DistanceMatrix& metric, std::size_t k_max);

/// Whether the metric embeds isometrically in E^n: every simplex of every
/// order must have a real volume and the dimension must not exceed n.
bool embeddable_metric(const DistanceMatrix& metric, std::size_t n);

/// Whether the angle table alone certifies conformal embeddability in E^n:
/// cosine-matrix determinants at every base are nonnegative for orders up
/// to n and vanish at order n+1.  Requires a space that admits a metric.
bool embeddable_angles(const AngleSpace& space, std::size_t n);

struct Coordinates {
    std::size_t ambient_dim = 0;
    std::vector<std::string> labels;    // canonical order
    std::vector<std::vector<double>> x; // one row per label, ambient_dim entries
    double max_distance_residual = 0.0; // worst relative gap against the source metric

    Index index(const std::string& label) const;
    double distance(Index i, Index j) const;
};

/// Angle at `vertex` subtended by p and q, computed in a way that stays
/// accurate near 0 and π (no arccos of a near-±1 cosine).
double vertex_angle(const std::vector<double>& vertex, const std::vector<double>& p,
                    const std::vector<double>& q);

/// Coordinates in E^n realizing the metric, base point at the origin.
/// Spectral factorization of the Gram matrix at the base point that
/// maximizes its minimum distance to the others; eigenvalues within the
/// determinant tolerance of zero are clamped.
Coordinates realize(const DistanceMatrix& metric, std::size_t n);

/// End-to-end conformal embedding: admits_metric, metrize with the
/// canonical base at scale lambda, embeddability check, realization, and
/// a final verification of every induced angle against the table.
Coordinates conformal_embed(const AngleSpace& space, std::size_t n, double lambda);

} // namespace anglespace
