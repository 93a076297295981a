#include "anglespace/embed.hpp"

#include "anglespace/detail/determinant.hpp"
#include "anglespace/metrize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace anglespace {

namespace {

constexpr double kRealizeTol = 1e-8;

// Gram matrix of the edge vectors base->s[i] for the points of `subset`
// other than the base position, row-major.
std::vector<double> gram_matrix(const DistanceMatrix& metric, const std::vector<Index>& subset,
                                std::size_t base_pos) {
    const std::size_t k = subset.size() - 1;
    std::vector<Index> rest;
    rest.reserve(k);
    for (std::size_t i = 0; i < subset.size(); ++i)
        if (i != base_pos) rest.push_back(subset[i]);
    std::vector<double> g(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g[i * k + j] = gram(metric, subset[base_pos], rest[i], rest[j]);
    return g;
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

std::vector<std::string> subset_labels(const std::vector<std::string>& labels,
                                       const std::vector<Index>& subset) {
    std::vector<std::string> out;
    out.reserve(subset.size());
    for (Index i : subset) out.push_back(labels[i]);
    return out;
}

} // namespace

double gram(const DistanceMatrix& metric, Index x0, Index xi, Index xj) {
    const double a = metric.d(x0, xi);
    const double b = metric.d(x0, xj);
    const double c = metric.d(xi, xj);
    return 0.5 * (a * a + b * b - c * c);
}

double gram(const DistanceMatrix& metric, const std::string& x0, const std::string& xi,
            const std::string& xj) {
    return gram(metric, metric.index(x0), metric.index(xi), metric.index(xj));
}

SimplexVolume simplex_volume_sq(const DistanceMatrix& metric,
                                const std::vector<std::string>& simplex) {
    if (simplex.size() < 2) {
        throw PreconditionError("a simplex needs at least two points");
    }
    std::vector<Index> idx;
    idx.reserve(simplex.size());
    for (const auto& label : simplex) idx.push_back(metric.index(label));
    {
        std::vector<Index> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw PreconditionError("simplex points must be distinct");
        }
    }
    const std::size_t n = idx.size() - 1;
    const std::vector<double> g = gram_matrix(metric, idx, 0);
    SimplexVolume out;
    out.det = detail::lu_determinant(g, n);
    const double tol = metric.tol().det_tolerance(n, detail::max_abs_entry(g));
    out.real = out.det >= -tol;
    out.volume = out.real ? std::sqrt(std::max(0.0, out.det)) / factorial(n)
                          : std::numeric_limits<double>::quiet_NaN();
    return out;
}

FlatnessReport flatness_and_dimension(const DistanceMatrix& metric, std::size_t k_max) {
    const Index n = metric.size();
    if (n == 0 || k_max > n - 1) {
        throw PreconditionError("flatness order must be at most the point count minus one");
    }
    FlatnessReport report;
    for (std::size_t k = 1; k <= k_max; ++k) {
        bool level_breaks = false;
        std::optional<SimplexWitness> level_best; // largest positive volume at this order
        std::vector<SimplexWitness> level_offenders;
        detail::for_each_subset(n, k + 1, [&](const std::vector<Index>& subset) {
            const std::vector<double> g = gram_matrix(metric, subset, 0);
            const double det = detail::lu_determinant(g, k);
            const double tol = metric.tol().det_tolerance(k, detail::max_abs_entry(g));
            if (det < -tol) {
                level_breaks = true;
                level_offenders.push_back({k, subset_labels(metric.labels(), subset), det});
            } else if (det > tol && (!level_best || det > level_best->value)) {
                level_best = SimplexWitness{k, subset_labels(metric.labels(), subset), det};
            }
        });
        if (level_breaks) {
            report.k_flat_up_to = k - 1;
            report.offending = std::move(level_offenders);
            return report;
        }
        report.k_flat_up_to = k;
        if (level_best) {
            report.dimension = k;
            report.attaining = std::move(level_best);
        }
    }
    return report;
}

bool embeddable_metric(const DistanceMatrix& metric, std::size_t n) {
    if (n < 1) throw PreconditionError("ambient dimension must be at least 1");
    const std::size_t k_max = metric.size() - 1;
    const FlatnessReport report = flatness_and_dimension(metric, k_max);
    return report.k_flat_up_to == k_max && report.dimension <= n;
}

bool embeddable_angles(const AngleSpace& space, std::size_t n) {
    if (n < 1) throw PreconditionError("ambient dimension must be at least 1");
    const MetrizationDecision decision = admits_metric(space);
    if (!decision.admits_metric) {
        throw EmbedError(EmbedError::Reason::incompatible,
                         "space does not admit a euclidean-compatible metric");
    }
    const Index count = space.size();
    auto cosine_det = [&](const std::vector<Index>& subset, std::size_t base_pos) {
        const std::size_t k = subset.size() - 1;
        std::vector<Index> rest;
        rest.reserve(k);
        for (std::size_t i = 0; i < subset.size(); ++i)
            if (i != base_pos) rest.push_back(subset[i]);
        std::vector<double> m(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                m[i * k + j] =
                    (i == j) ? 1.0
                             : std::cos(space.angle(rest[i], subset[base_pos], rest[j]));
        return detail::lu_determinant(std::move(m), k);
    };

    bool ok = true;
    // Nonnegative cosine determinants for every order up to n.
    for (std::size_t k = 1; k <= n && k + 1 <= count && ok; ++k) {
        const double tol = space.tol().det_tolerance(k, 1.0);
        detail::for_each_subset(count, k + 1, [&](const std::vector<Index>& subset) {
            if (!ok) return;
            for (std::size_t b = 0; b < subset.size() && ok; ++b) {
                if (cosine_det(subset, b) < -tol) ok = false;
            }
        });
    }
    // Vanishing cosine determinants at order n + 1.
    if (ok && count >= n + 2) {
        const double tol = space.tol().det_tolerance(n + 1, 1.0);
        detail::for_each_subset(count, n + 2, [&](const std::vector<Index>& subset) {
            if (!ok) return;
            for (std::size_t b = 0; b < subset.size() && ok; ++b) {
                if (std::abs(cosine_det(subset, b)) > tol) ok = false;
            }
        });
    }
    return ok;
}

Index Coordinates::index(const std::string& label) const {
    const auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) {
        throw PreconditionError("unknown point '" + label + "'");
    }
    return static_cast<Index>(it - labels.begin());
}

double Coordinates::distance(Index i, Index j) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < ambient_dim; ++t) {
        const double diff = x[i][t] - x[j][t];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double vertex_angle(const std::vector<double>& vertex, const std::vector<double>& p,
                    const std::vector<double>& q) {
    const std::size_t dim = vertex.size();
    if (p.size() != dim || q.size() != dim) {
        throw PreconditionError("angle arguments must share one ambient dimension");
    }
    std::vector<double> u(dim), v(dim);
    double nu = 0.0, nv = 0.0;
    for (std::size_t t = 0; t < dim; ++t) {
        u[t] = p[t] - vertex[t];
        v[t] = q[t] - vertex[t];
        nu += u[t] * u[t];
        nv += v[t] * v[t];
    }
    nu = std::sqrt(nu);
    nv = std::sqrt(nv);
    if (nu == 0.0 || nv == 0.0) {
        throw DegenerateGeometryError("angle vertex coincides with an arm point");
    }
    double diff = 0.0, sum = 0.0;
    for (std::size_t t = 0; t < dim; ++t) {
        const double a = nv * u[t] - nu * v[t];
        const double b = nv * u[t] + nu * v[t];
        diff += a * a;
        sum += b * b;
    }
    return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

Coordinates realize(const DistanceMatrix& metric, std::size_t n) {
    if (n < 1) throw PreconditionError("ambient dimension must be at least 1");
    const Index count = metric.size();
    if (count < 2) throw PreconditionError("realization needs at least two points");

    // Base point: farthest from its nearest neighbour, first on ties.
    Index base = 0;
    double best = -1.0;
    for (Index i = 0; i < count; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < count; ++j)
            if (j != i) nearest = std::min(nearest, metric.d(i, j));
        if (nearest > best) {
            best = nearest;
            base = i;
        }
    }

    std::vector<Index> rest;
    rest.reserve(count - 1);
    for (Index i = 0; i < count; ++i)
        if (i != base) rest.push_back(i);
    const std::size_t m = rest.size();

    Eigen::MatrixXd g(m, m);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            g(i, j) = gram(metric, base, rest[i], rest[j]);
            max_abs = std::max(max_abs, std::abs(g(i, j)));
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
    if (solver.info() != Eigen::Success) {
        throw EmbedError(EmbedError::Reason::residual_exceeded,
                         "eigendecomposition of the Gram matrix failed");
    }
    const double clamp = metric.tol().eps_det * std::max(1.0, max_abs);
    const Eigen::VectorXd& lambda = solver.eigenvalues(); // ascending
    if (m > 0 && lambda(0) < -clamp) {
        std::ostringstream msg;
        msg << "metric is not flat: Gram eigenvalue " << lambda(0)
            << " at base " << metric.labels()[base];
        throw EmbedError(EmbedError::Reason::not_flat, msg.str());
    }
    std::size_t rank = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (lambda(i) > clamp) ++rank;
    if (rank > n) {
        std::ostringstream msg;
        msg << "metric needs " << rank << " dimensions, requested " << n;
        throw EmbedError(EmbedError::Reason::rank_exceeded, msg.str());
    }

    Coordinates out;
    out.ambient_dim = n;
    out.labels = metric.labels();
    out.x.assign(count, std::vector<double>(n, 0.0));
    for (std::size_t t = 0; t < n && t < m; ++t) {
        const std::size_t col = m - 1 - t; // largest eigenvalues first
        const double value = std::max(0.0, lambda(col));
        if (value <= clamp) continue;
        const double scale = std::sqrt(value);
        for (std::size_t i = 0; i < m; ++i) {
            out.x[rest[i]][t] = scale * solver.eigenvectors()(i, col);
        }
    }

    for (Index i = 0; i < count; ++i) {
        for (Index j = i + 1; j < count; ++j) {
            const double got = out.distance(i, j);
            const double want = metric.d(i, j);
            out.max_distance_residual =
                std::max(out.max_distance_residual, std::abs(got - want) / want);
        }
    }
    if (out.max_distance_residual > kRealizeTol) {
        std::ostringstream msg;
        msg << "realized distances drift by " << out.max_distance_residual
            << " relative, beyond " << kRealizeTol;
        throw EmbedError(EmbedError::Reason::residual_exceeded, msg.str());
    }
    return out;
}

Coordinates conformal_embed(const AngleSpace& space, std::size_t n, double lambda) {
    if (n < 1) throw PreconditionError("ambient dimension must be at least 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw PreconditionError("scale must be positive");
    }
    const MetrizationDecision decision = admits_metric(space);
    if (!decision.admits_metric) {
        std::ostringstream msg;
        msg << "space does not admit a euclidean-compatible metric; failed:";
        for (const CheckReport* part :
             {&decision.euclidean, &decision.second_axiom, &decision.tetragon, &decision.global}) {
            if (!part->passed) msg << ' ' << condition_name(part->condition);
        }
        throw EmbedError(EmbedError::Reason::incompatible, msg.str());
    }
    const BasePair base{space.labels()[0], space.labels()[1], lambda};
    const DistanceMatrix metric = metrize(space, base);
    if (!embeddable_metric(metric, n)) {
        std::ostringstream msg;
        msg << "reconstructed metric does not embed in dimension " << n;
        throw EmbedError(EmbedError::Reason::not_embeddable, msg.str());
    }
    Coordinates coords = realize(metric, n);

    double worst = 0.0;
    std::vector<std::string> worst_tuple;
    const Index count = space.size();
    for (Index b = 0; b < count; ++b) {
        for (Index a = 0; a < count; ++a) {
            if (a == b) continue;
            for (Index c = a + 1; c < count; ++c) {
                if (c == b) continue;
                const double got = vertex_angle(coords.x[b], coords.x[a], coords.x[c]);
                const double gap = std::abs(got - space.angle(a, b, c));
                if (gap > worst) {
                    worst = gap;
                    worst_tuple = {space.label(a), space.label(b), space.label(c)};
                }
            }
        }
    }
    if (worst > space.tol().eps_angle) {
        std::ostringstream msg;
        msg << "realized angle(" << worst_tuple[0] << ',' << worst_tuple[1] << ','
            << worst_tuple[2] << ") drifts by " << worst << " rad";
        throw EmbedError(EmbedError::Reason::angle_mismatch, msg.str());
    }
    return coords;
}

} // namespace anglespace
