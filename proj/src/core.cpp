#include "anglespace/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace anglespace {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

void check_eps(double value, const char* name) {
    if (!(value > 0.0) || value > 1e-2 || !std::isfinite(value)) {
        std::ostringstream os;
        os << "tolerance " << name << " must lie in (0, 1e-2], got " << value;
        throw PreconditionError(os.str());
    }
}

std::vector<std::string> canonical_labels(std::vector<std::string> points) {
    if (points.empty()) throw PreconditionError("at least one point is required");
    for (const auto& p : points) {
        if (p.empty()) throw PreconditionError("point labels must be non-empty");
    }
    std::sort(points.begin(), points.end());
    auto dup = std::adjacent_find(points.begin(), points.end());
    if (dup != points.end()) {
        throw PreconditionError("duplicate point label: " + *dup);
    }
    return points;
}

Index lookup(const std::vector<std::string>& labels, const std::string& label) {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) {
        throw PreconditionError("unknown point label: " + label);
    }
    return static_cast<Index>(it - labels.begin());
}

} // namespace

void ToleranceConfig::validate() const {
    check_eps(eps_angle, "eps_angle");
    check_eps(eps_rel, "eps_rel");
    check_eps(eps_det, "eps_det");
}

double ToleranceConfig::det_tolerance(std::size_t order, double max_abs) const {
    return eps_det * std::pow(std::max(1.0, max_abs), static_cast<double>(order));
}

double identity_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

bool BetweennessRelation::insert(Index a, Index b, Index c) {
    if (a == b || b == c || a == c) {
        throw PreconditionError("betweenness triple requires three distinct points");
    }
    Triple key{std::min(a, c), b, std::max(a, c)};
    return triples_.insert(key).second;
}

bool BetweennessRelation::between(Index a, Index b, Index c) const {
    if (a == b || b == c || a == c) return false;
    return triples_.count({std::min(a, c), b, std::max(a, c)}) != 0;
}

bool BetweennessRelation::collinear(Index p, Index q, Index r) const {
    return between(q, p, r) || between(p, q, r) || between(p, r, q);
}

AngleTable::AngleTable(Index point_count)
    : n_(point_count),
      theta_(point_count * point_count * point_count,
             std::numeric_limits<double>::quiet_NaN()),
      sin_(theta_.size(), std::numeric_limits<double>::quiet_NaN()) {
    // Equal-arm angles are forced to zero for every vertex.
    for (Index a = 0; a < n_; ++a) {
        for (Index b = 0; b < n_; ++b) {
            if (a == b) continue;
            theta_[slot(a, b, a)] = 0.0;
            sin_[slot(a, b, a)] = 0.0;
        }
    }
}

std::size_t AngleTable::slot(Index a, Index b, Index c) const {
    return (a * n_ + b) * n_ + c;
}

void AngleTable::set(Index a, Index b, Index c, double theta) {
    theta_[slot(a, b, c)] = theta;
    theta_[slot(c, b, a)] = theta;
    const double s = std::sin(theta);
    sin_[slot(a, b, c)] = s;
    sin_[slot(c, b, a)] = s;
}

bool AngleTable::is_set(Index a, Index b, Index c) const {
    return !std::isnan(theta_[slot(a, b, c)]);
}

double AngleTable::angle(Index a, Index b, Index c) const {
    return theta_[slot(a, b, c)];
}

double AngleTable::sin_angle(Index a, Index b, Index c) const {
    return sin_[slot(a, b, c)];
}

AngleSpace::AngleSpace(std::vector<std::string> labels, BetweennessRelation between,
                       AngleTable angles, ToleranceConfig tol)
    : labels_(std::move(labels)), between_(std::move(between)),
      angles_(std::move(angles)), tol_(tol) {}

const std::string& AngleSpace::label(Index i) const {
    if (i >= labels_.size()) throw PreconditionError("point index out of range");
    return labels_[i];
}

Index AngleSpace::index(const std::string& label) const {
    return lookup(labels_, label);
}

bool AngleSpace::has(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

double AngleSpace::angle(const std::string& a, const std::string& b,
                         const std::string& c) const {
    return angles_.angle(index(a), index(b), index(c));
}

double AngleSpace::sin_angle(const std::string& a, const std::string& b,
                             const std::string& c) const {
    return angles_.sin_angle(index(a), index(b), index(c));
}

AngleSpace build_angle_space(std::vector<std::string> points,
                             const std::vector<std::array<std::string, 3>>& betweenness_triples,
                             const std::vector<AngleEntryInput>& angle_entries,
                             ToleranceConfig tol) {
    tol.validate();
    auto labels = canonical_labels(std::move(points));
    const Index n = labels.size();

    BetweennessRelation between;
    for (const auto& t : betweenness_triples) {
        const Index a = lookup(labels, t[0]);
        const Index b = lookup(labels, t[1]);
        const Index c = lookup(labels, t[2]);
        if (a == b || b == c || a == c) {
            throw PreconditionError("betweenness triple (" + join({t[0], t[1], t[2]}) +
                                    ") must name three distinct points");
        }
        between.insert(a, b, c);
    }
    // A point cannot be between two others and simultaneously have one of
    // them between itself and the third.
    for (const auto& t : between.triples()) {
        const Index x = t[0], m = t[1], z = t[2];
        if (between.between(m, x, z) || between.between(m, z, x)) {
            throw PreconditionError("betweenness triples conflict on {" +
                                    join({labels[x], labels[m], labels[z]}) + "}");
        }
    }

    AngleTable table(n);
    const double pi = std::numbers::pi;
    for (const auto& e : angle_entries) {
        const Index a = lookup(labels, e.a);
        const Index b = lookup(labels, e.b);
        const Index c = lookup(labels, e.c);
        if (a == b || b == c) {
            throw PreconditionError("angle entry (" + join({e.a, e.b, e.c}) +
                                    ") must have arms distinct from the vertex");
        }
        if (!std::isfinite(e.theta_radians) || e.theta_radians < 0.0 ||
            e.theta_radians > pi) {
            std::ostringstream os;
            os << "angle (" << join({e.a, e.b, e.c}) << ") out of range [0, pi]: "
               << e.theta_radians;
            throw PreconditionError(os.str());
        }
        if (a == c) {
            if (e.theta_radians > tol.eps_angle) {
                throw PreconditionError("angle (" + join({e.a, e.b, e.c}) +
                                        ") has equal arms and must be zero");
            }
            continue; // forced zero, already present
        }
        if (table.is_set(a, b, c)) {
            if (std::abs(table.angle(a, b, c) - e.theta_radians) > tol.eps_angle) {
                throw PreconditionError("conflicting symmetric angle entries for (" +
                                        join({e.a, e.b, e.c}) + ")");
            }
            continue; // first occurrence wins
        }
        table.set(a, b, c, e.theta_radians);
    }
    for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) {
            if (a == b) continue;
            for (Index c = a + 1; c < n; ++c) {
                if (c == b) continue;
                if (!table.is_set(a, b, c)) {
                    throw PreconditionError("missing angle entry (" + labels[a] + "," +
                                            labels[b] + "," + labels[c] + ")");
                }
            }
        }
    }

    return AngleSpace(std::move(labels), std::move(between), std::move(table), tol);
}

bool collinear(const AngleSpace& space, const std::vector<std::string>& points) {
    if (points.size() < 3) {
        throw PreconditionError("collinearity is defined for at least 3 points");
    }
    std::vector<Index> idx;
    idx.reserve(points.size());
    for (const auto& p : points) idx.push_back(space.index(p));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
        throw PreconditionError("collinearity query requires distinct points");
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            for (std::size_t k = j + 1; k < idx.size(); ++k)
                if (!space.betweenness().collinear(idx[i], idx[j], idx[k])) return false;
    return true;
}

std::vector<std::vector<Index>> enumerate_ngons(const AngleSpace& space, std::size_t n,
                                                bool nondegenerate) {
    if (n < 3 || n > space.size()) {
        throw PreconditionError("n-gon size must lie in [3, point count]");
    }
    std::vector<std::vector<Index>> out;
    detail::for_each_subset(space.size(), n, [&](const std::vector<Index>& pick) {
        if (nondegenerate) {
            for (std::size_t i = 0; i < pick.size(); ++i)
                for (std::size_t j = i + 1; j < pick.size(); ++j)
                    for (std::size_t k = j + 1; k < pick.size(); ++k)
                        if (space.betweenness().collinear(pick[i], pick[j], pick[k]))
                            return;
        }
        out.push_back(pick);
    });
    return out;
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<double> grid,
                               ToleranceConfig tol)
    : labels_(std::move(labels)), grid_(std::move(grid)), tol_(tol) {
    tol_.validate();
    const Index n = labels_.size();
    if (n == 0) throw PreconditionError("at least one point is required");
    if (!std::is_sorted(labels_.begin(), labels_.end()) ||
        std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
        throw PreconditionError("distance matrix labels must be sorted and unique");
    }
    if (grid_.size() != n * n) throw PreconditionError("distance grid has wrong size");
    for (Index i = 0; i < n; ++i) {
        if (grid_[i * n + i] != 0.0) {
            throw PreconditionError("distance diagonal must be zero");
        }
        for (Index j = i + 1; j < n; ++j) {
            const double v = grid_[i * n + j];
            if (!std::isfinite(v) || v <= 0.0) {
                throw PreconditionError("distance d(" + labels_[i] + "," + labels_[j] +
                                        ") must be finite and positive");
            }
            if (v != grid_[j * n + i]) {
                throw PreconditionError("distance grid must be symmetric");
            }
        }
    }
}

DistanceMatrix DistanceMatrix::from_entries(std::vector<std::string> points,
                                            const std::vector<DistanceEntryInput>& entries,
                                            ToleranceConfig tol) {
    tol.validate();
    auto labels = canonical_labels(std::move(points));
    const Index n = labels.size();
    std::vector<double> grid(n * n, 0.0);
    std::vector<bool> seen(n * n, false);
    for (const auto& e : entries) {
        const Index i = lookup(labels, e.p);
        const Index j = lookup(labels, e.q);
        if (i == j) throw PreconditionError("distance entry for identical points " + e.p);
        if (!std::isfinite(e.d) || e.d <= 0.0) {
            std::ostringstream os;
            os << "distance d(" << e.p << "," << e.q << ") must be positive, got " << e.d;
            throw PreconditionError(os.str());
        }
        const std::size_t a = std::min(i, j) * n + std::max(i, j);
        if (seen[a]) {
            if (std::abs(grid[a] - e.d) > tol.eps_rel * std::max({1.0, grid[a], e.d})) {
                throw PreconditionError("conflicting distance entries for (" + e.p + "," +
                                        e.q + ")");
            }
            continue;
        }
        seen[a] = true;
        grid[a] = e.d;
        grid[std::max(i, j) * n + std::min(i, j)] = e.d;
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (!seen[i * n + j]) {
                throw PreconditionError("missing distance entry (" + labels[i] + "," +
                                        labels[j] + ")");
            }
        }
    }
    return DistanceMatrix(std::move(labels), std::move(grid), tol);
}

const std::string& DistanceMatrix::label(Index i) const {
    if (i >= labels_.size()) throw PreconditionError("point index out of range");
    return labels_[i];
}

Index DistanceMatrix::index(const std::string& label) const {
    return lookup(labels_, label);
}

double DistanceMatrix::d(const std::string& p, const std::string& q) const {
    return d(index(p), index(q));
}

double DistanceMatrix::max_distance() const {
    return *std::max_element(grid_.begin(), grid_.end());
}

std::vector<TriangleViolation> DistanceMatrix::triangle_violations() const {
    const Index n = size();
    std::vector<TriangleViolation> out;
    for (Index a = 0; a < n; ++a) {
        for (Index c = a + 1; c < n; ++c) {
            for (Index b = 0; b < n; ++b) {
                if (b == a || b == c) continue;
                const double direct = d(a, c);
                const double detour = d(a, b) + d(b, c);
                if (direct - detour > tol_.eps_rel * direct) {
                    out.push_back({{labels_[a], labels_[b], labels_[c]}, direct, detour,
                                   identity_residual(direct, detour)});
                }
            }
        }
    }
    return out;
}

BetweennessRelation DistanceMatrix::metric_betweenness() const {
    const Index n = size();
    BetweennessRelation rel;
    for (Index a = 0; a < n; ++a) {
        for (Index c = a + 1; c < n; ++c) {
            for (Index b = 0; b < n; ++b) {
                if (b == a || b == c) continue;
                if (std::abs(d(a, b) + d(b, c) - d(a, c)) <= tol_.eps_rel * d(a, c)) {
                    rel.insert(a, b, c);
                }
            }
        }
    }
    return rel;
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw PreconditionError("scale factor must be positive");
    }
    std::vector<double> grid(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) grid[i] = grid_[i] * factor;
    const Index n = size();
    for (Index i = 0; i < n; ++i) grid[i * n + i] = 0.0;
    return DistanceMatrix(labels_, std::move(grid), tol_);
}

} // namespace anglespace
