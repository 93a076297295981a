#pragma once

#include "anglespace/core.hpp"
#include "anglespace/embed.hpp"
#include "anglespace/errors.hpp"

#include <cstdint>
#include <optional>

namespace anglespace {

/// Parses a space document.  Tolerances in the document override
/// `fallback`; both fall back to the built-in defaults.
AngleSpace parse_space(const std::string& text,
                       const std::optional<ToleranceConfig>& fallback = std::nullopt);

/// Parses a metric document (which never carries tolerances).
DistanceMatrix parse_metric(const std::string& text,
                            const std::optional<ToleranceConfig>& fallback = std::nullopt);

/// Canonical serializations: points sorted, tuples normalized and sorted,
/// tolerances always present in space documents.  parse ∘ serialize is the
/// identity, serialize ∘ parse ∘ serialize = serialize.
std::string serialize_space(const AngleSpace& space);
std::string serialize_metric(const DistanceMatrix& metric);
std::string serialize_coordinates(const Coordinates& coords);

/// Builds a space directly from coordinates: distances by the euclidean
/// formula, angles by the arccos of the law-of-cosines ratio evaluated in
/// extended precision, except that triples declared collinear get their
/// exact forced values (π at the middle point, 0 at the ends).
AngleSpace space_from_points(const std::vector<std::string>& labels,
                             const std::vector<std::vector<double>>& coords,
                             const std::vector<std::array<std::string, 3>>& betweenness,
                             const ToleranceConfig& tol = {});

DistanceMatrix metric_from_points(const std::vector<std::string>& labels,
                                  const std::vector<std::vector<double>>& coords,
                                  const ToleranceConfig& tol = {});

struct GeneratedInstance {
    Coordinates coordinates;
    DistanceMatrix metric;
    AngleSpace space;
};

/// Seeded euclidean sampler used as a reference instance source.
///
/// Draws `count - collinear` points whose coordinates are 26-bit dyadics in
/// [0,1)^dim from mt19937_64(seed), then plants `collinear` extra points as
/// exact midpoints of the lexicographically first pairs.  Midpoint dyadics
/// make the collinear distance sums exact, so the betweenness acquired from
/// the construction is never a floating-point judgement call.  Samples are
/// redrawn (same stream) until every pairwise distance, every unplanted
/// angle's gap from 0 and π, and the best dim-simplex volume clear fixed
/// margins; a bounded number of redraws guards against adversarial seeds.
GeneratedInstance gen_euclidean(std::size_t dim, std::size_t count, std::uint64_t seed,
                                std::size_t collinear, const ToleranceConfig& tol = {});

/// The three documents of an instance wrapped in one object.
std::string serialize_generated(const GeneratedInstance& instance);

} // namespace anglespace
