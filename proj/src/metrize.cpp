#include "anglespace/metrize.hpp"

#include <algorithm>
#include <cmath>

namespace anglespace {

namespace {

constexpr double kSineFloor = 1e-12;
constexpr int kMaxAuxDepth = 2;

double checked_sine(const AngleSpace& space, Index a, Index b, Index c) {
    const double s = space.sin_angle(a, b, c);
    if (s < kSineFloor) {
        throw DegenerateGeometryError("sine of angle(" + space.label(a) + "," +
                                      space.label(b) + "," + space.label(c) +
                                      ") is below the degeneracy floor");
    }
    return s;
}

// d(s, t) for a base point s and an off-base point t, through the base
// trigon {a, b, t}: the known side d(a, b) = lambda is opposite t, the
// wanted side is opposite the other base point.
double base_leg(const AngleSpace& space, Index a, Index b, double lambda, Index s,
                Index t) {
    const Index other = (s == a) ? b : a;
    return lambda * checked_sine(space, s, other, t) / checked_sine(space, s, t, other);
}

double dab(const AngleSpace& space, Index a, Index b, double lambda, Index c, Index d,
           int depth);

// Disjoint target pair: reach one target point from the base, then pivot
// through a base point inside the target trigon.  Routes are tried in
// canonical order and need both trigons off their lines.
double disjoint_route(const AngleSpace& space, Index a, Index b, double lambda, Index c,
                      Index d, int depth) {
    const auto& rel = space.betweenness();
    const Index anchors[4][2] = {{a, c}, {a, d}, {b, c}, {b, d}};
    for (const auto& route : anchors) {
        const Index e = route[0]; // pivot base point
        const Index f = route[1]; // reached target point
        const Index g = (f == c) ? d : c;
        if (rel.collinear(a, b, f) || rel.collinear(e, c, d)) continue;
        const double reach = base_leg(space, a, b, lambda, e, f);
        return reach * checked_sine(space, c, e, d) / checked_sine(space, e, g, f);
    }
    // No direct route: measure from an auxiliary point off both lines.
    if (depth >= kMaxAuxDepth) {
        throw DegenerateGeometryError("no evaluation route for the requested pair");
    }
    for (Index r = 0; r < space.size(); ++r) {
        if (r == a || r == b || r == c || r == d) continue;
        if (rel.collinear(a, b, r) || rel.collinear(c, d, r)) continue;
        const double mu = dab(space, a, b, lambda, a, r, depth + 1);
        return dab(space, a, r, mu, c, d, depth + 1);
    }
    throw DegenerateGeometryError("no auxiliary point off the base line");
}

double dab(const AngleSpace& space, Index a, Index b, double lambda, Index c, Index d,
           int depth) {
    if ((c == a && d == b) || (c == b && d == a)) return lambda;
    const bool c_on_base = (c == a || c == b);
    const bool d_on_base = (d == a || d == b);
    if (c_on_base || d_on_base) {
        const Index s = c_on_base ? c : d;
        const Index t = c_on_base ? d : c;
        if (space.betweenness().collinear(a, b, t)) {
            throw DegenerateGeometryError("base and target points are all collinear");
        }
        return base_leg(space, a, b, lambda, s, t);
    }
    return disjoint_route(space, a, b, lambda, c, d, depth);
}

bool all_collinear(const AngleSpace& space, std::vector<Index> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (!space.betweenness().collinear(pts[i], pts[j], pts[k])) return false;
    return true;
}

void validate_base(const AngleSpace& space, const BasePair& base) {
    space.index(base.a);
    space.index(base.b);
    if (base.a == base.b) throw PreconditionError("base pair must name two distinct points");
    if (!(base.lambda > 0.0) || !std::isfinite(base.lambda)) {
        throw PreconditionError("base scale must be positive");
    }
}

} // namespace

double distance_from_base(const AngleSpace& space, const BasePair& base,
                          const std::string& c, const std::string& d) {
    validate_base(space, base);
    if (c == d) throw PreconditionError("target pair must name two distinct points");
    const Index ia = space.index(base.a), ib = space.index(base.b);
    const Index ic = space.index(c), id = space.index(d);
    if ((ic == ia && id == ib) || (ic == ib && id == ia)) return base.lambda;
    if (all_collinear(space, {ia, ib, ic, id})) {
        throw DegenerateGeometryError("base and target points are all collinear");
    }
    return dab(space, ia, ib, base.lambda, ic, id, 0);
}

DistanceMatrix metrize(const AngleSpace& space, const BasePair& base) {
    validate_base(space, base);
    const Index n = space.size();
    if (n < 3) throw PreconditionError("metric reconstruction needs at least 3 points");
    if (all_collinear(space, [&] {
            std::vector<Index> all(n);
            for (Index i = 0; i < n; ++i) all[i] = i;
            return all;
        }())) {
        throw TrivialSpaceError("trivial space: metric not unique (every triple is collinear, "
                                "so the angles admit infinitely many metrics)");
    }

    const Index ia = space.index(base.a), ib = space.index(base.b);
    const auto& rel = space.betweenness();
    std::vector<double> grid(n * n, 0.0);
    auto put = [&](Index i, Index j, double v) {
        grid[i * n + j] = v;
        grid[j * n + i] = v;
    };

    for (Index p = 0; p < n; ++p) {
        for (Index q = p + 1; q < n; ++q) {
            double value;
            if ((p == ia && q == ib) || (p == ib && q == ia)) {
                value = base.lambda;
            } else if (!all_collinear(space, {ia, ib, p, q})) {
                value = dab(space, ia, ib, base.lambda, p, q, 0);
            } else {
                // The pair shares the base line; measure it from auxiliary
                // points off that line and require the routes to agree.
                double primary = 0.0;
                bool have_primary = false;
                for (Index r = 0; r < n; ++r) {
                    if (r == ia || r == ib || r == p || r == q) continue;
                    if (rel.collinear(ia, ib, r) || rel.collinear(p, q, r)) continue;
                    const double mu = dab(space, ia, ib, base.lambda, ia, r, 0);
                    const double routed = dab(space, ia, r, mu, p, q, 0);
                    if (!have_primary) {
                        primary = routed;
                        have_primary = true;
                    } else {
                        if (std::abs(routed - primary) >
                            space.tol().eps_rel * std::max({1.0, routed, primary})) {
                            throw MetrizeError(
                                "auxiliary routes disagree for d(" + space.label(p) + "," +
                                    space.label(q) + ")",
                                {space.label(p), space.label(q), space.label(r)},
                                identity_residual(primary, routed));
                        }
                        break; // one agreement suffices
                    }
                }
                if (!have_primary) {
                    throw DegenerateGeometryError("no auxiliary point off the base line");
                }
                value = primary;
            }
            if (!(value > 0.0) || !std::isfinite(value)) {
                throw MetrizeError("reconstructed distance is not positive",
                                   {space.label(p), space.label(q)}, 0.0);
            }
            put(p, q, value);
        }
    }

    DistanceMatrix metric(space.labels(), std::move(grid), space.tol());
    const CompatibilityResiduals check = residuals(space, metric);
    if (check.max_law_of_cosines_residual > space.tol().eps_rel) {
        throw MetrizeError("reconstructed metric disagrees with the angle table",
                           check.worst_law_of_cosines_tuple,
                           check.max_law_of_cosines_residual);
    }
    return metric;
}

CompatibilityResiduals residuals(const AngleSpace& space, const DistanceMatrix& metric) {
    if (space.labels() != metric.labels()) {
        throw PreconditionError("angle space and metric must share the same points");
    }
    CompatibilityResiduals out;
    const Index n = space.size();
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            if (b == a) continue;
            for (Index c = b + 1; c < n; ++c) {
                if (c == a) continue;
                // Distance implied for the side opposite vertex a.
                const double ab = metric.d(a, b), ac = metric.d(a, c);
                const double expr =
                    ab * ab + ac * ac - 2.0 * ab * ac * std::cos(space.angle(b, a, c));
                const double implied = std::sqrt(std::max(0.0, expr));
                const double r = identity_residual(metric.d(b, c), implied);
                if (r > out.max_law_of_cosines_residual) {
                    out.max_law_of_cosines_residual = r;
                    out.worst_law_of_cosines_tuple = {space.label(a), space.label(b),
                                                      space.label(c)};
                }
                // Sides scale with the sines of their opposite angles.
                const double lhs = metric.d(b, c) * space.sin_angle(a, b, c);
                const double rhs = ac * space.sin_angle(b, a, c);
                const double rs = identity_residual(lhs, rhs);
                if (rs > out.max_law_of_sines_residual) {
                    out.max_law_of_sines_residual = rs;
                    out.worst_law_of_sines_tuple = {space.label(a), space.label(b),
                                                    space.label(c)};
                }
            }
        }
    }
    return out;
}

} // namespace anglespace
