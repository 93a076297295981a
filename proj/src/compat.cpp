#include "anglespace/compat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace anglespace {

namespace {

constexpr double kSineFloor = 1e-12;

void finish(CheckReport& report) {
    std::sort(report.violations.begin(), report.violations.end(),
              [](const IdentityViolation& a, const IdentityViolation& b) {
                  return a.tuple < b.tuple;
              });
    report.passed = report.violations.empty();
}

std::vector<std::string> names(const AngleSpace& space, const std::vector<Index>& idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (Index i : idx) out.push_back(space.label(i));
    return out;
}

// Worst violation for one queried subset; near-degenerate sine factors
// dominate balanced products so they are never masked.
struct SubsetWorst {
    bool any = false;
    bool degenerate = false;
    IdentityViolation violation;

    void offer(IdentityViolation v, bool near_degenerate) {
        const bool better =
            !any || (near_degenerate && !degenerate) ||
            (near_degenerate == degenerate && v.residual > violation.residual);
        if (better) {
            violation = std::move(v);
            degenerate = near_degenerate;
            any = true;
        }
    }
};

bool product_sides(const AngleSpace& space, const Index* as, const Index* bs,
                   const Index* cs, std::size_t k, double& lhs, double& rhs,
                   double& min_sine) {
    lhs = 1.0;
    rhs = 1.0;
    min_sine = 2.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double s = space.sin_angle(as[i], bs[i], cs[i]);
        min_sine = std::min(min_sine, s);
        if (i < k / 2) {
            lhs *= s;
        } else {
            rhs *= s;
        }
    }
    return min_sine >= kSineFloor;
}

bool subset_has_collinear_triple(const AngleSpace& space, const std::vector<Index>& pick) {
    for (std::size_t i = 0; i < pick.size(); ++i)
        for (std::size_t j = i + 1; j < pick.size(); ++j)
            for (std::size_t k = j + 1; k < pick.size(); ++k)
                if (space.betweenness().collinear(pick[i], pick[j], pick[k])) return true;
    return false;
}

} // namespace

std::string_view condition_name(Condition c) {
    switch (c) {
        case Condition::euclidean: return "euclidean";
        case Condition::second_axiom: return "second-axiom";
        case Condition::tetragon: return "tetragon";
        case Condition::pentagon: return "pentagon";
        case Condition::hexagon: return "hexagon";
        case Condition::global_compatibility: return "global-compatibility";
        case Condition::stewart: return "stewart";
    }
    return "unknown";
}

CheckReport check_euclidean(const AngleSpace& space) {
    CheckReport report{Condition::euclidean, true, {}};
    const double pi = std::numbers::pi;
    const double eps = space.tol().eps_angle;
    if (space.size() >= 3) {
        detail::for_each_subset(space.size(), 3, [&](const std::vector<Index>& t) {
            const double sum = space.angle(t[1], t[0], t[2]) +
                               space.angle(t[0], t[1], t[2]) +
                               space.angle(t[0], t[2], t[1]);
            if (std::abs(sum - pi) > eps) {
                report.violations.push_back(
                    {names(space, t), sum, pi, identity_residual(sum, pi)});
            }
        });
    }
    finish(report);
    return report;
}

CheckReport check_second_axiom(const AngleSpace& space) {
    CheckReport report{Condition::second_axiom, true, {}};
    const double pi = std::numbers::pi;
    const double eps = space.tol().eps_angle;
    const auto& rel = space.betweenness();
    for (const auto& t : rel.triples()) {
        const Index x = t[0], m = t[1], z = t[2];
        for (Index w = 0; w < space.size(); ++w) {
            if (w == x || w == m || w == z) continue;
            if (rel.collinear(w, x, m) || rel.collinear(w, x, z) || rel.collinear(w, m, z))
                continue;
            SubsetWorst worst;
            // The middle point splits the full angle at the witness.
            const double full = space.angle(x, w, z);
            const double split = space.angle(x, w, m) + space.angle(m, w, z);
            if (std::abs(full - split) > eps) {
                worst.offer({names(space, {x, m, z, w}), full, split,
                             identity_residual(full, split)},
                            false);
            }
            // The two angles at the middle point are supplementary.
            const double straddle = space.angle(x, m, w) + space.angle(z, m, w);
            if (std::abs(straddle - pi) > eps) {
                worst.offer({names(space, {x, m, z, w}), straddle, pi,
                             identity_residual(straddle, pi)},
                            false);
            }
            if (worst.any) report.violations.push_back(worst.violation);
        }
    }
    finish(report);
    return report;
}

CheckReport check_tetragon_metrizability(const AngleSpace& space) {
    CheckReport report{Condition::tetragon, true, {}};
    const double eps = space.tol().eps_rel;
    if (space.size() >= 4) {
        detail::for_each_subset(space.size(), 4, [&](const std::vector<Index>& pick) {
            if (subset_has_collinear_triple(space, pick)) return;
            SubsetWorst worst;
            for (std::size_t apex = 0; apex < 4; ++apex) {
                const Index q = pick[apex];
                Index base[3];
                std::size_t w = 0;
                for (std::size_t i = 0; i < 4; ++i)
                    if (i != apex) base[w++] = pick[i];
                // Around the cycle base[0] -> base[1] -> base[2]: successor
                // arms on one side, predecessor arms on the other.
                const Index as[6] = {base[1], base[2], base[0], base[2], base[0], base[1]};
                const Index bs[6] = {base[0], base[1], base[2], base[0], base[1], base[2]};
                const Index cs[6] = {q, q, q, q, q, q};
                double lhs, rhs, min_sine;
                const bool clean = product_sides(space, as, bs, cs, 6, lhs, rhs, min_sine);
                const std::vector<Index> tuple{base[0], base[1], base[2], q};
                if (!clean) {
                    worst.offer({names(space, tuple), lhs, rhs, identity_residual(lhs, rhs)},
                                true);
                } else if (std::abs(lhs - rhs) > eps * std::max({1.0, lhs, rhs})) {
                    worst.offer({names(space, tuple), lhs, rhs, identity_residual(lhs, rhs)},
                                false);
                }
            }
            if (worst.any) report.violations.push_back(worst.violation);
        });
    }
    finish(report);
    return report;
}

namespace {

CheckReport check_gon_identity(const AngleSpace& space, std::size_t gon, Condition cond) {
    CheckReport report{cond, true, {}};
    const double eps = space.tol().eps_rel;
    if (space.size() < gon) {
        finish(report);
        return report;
    }
    detail::for_each_subset(space.size(), gon, [&](const std::vector<Index>& pick) {
        if (subset_has_collinear_triple(space, pick)) return;
        SubsetWorst worst;
        std::vector<Index> perm = pick;
        std::sort(perm.begin(), perm.end());
        do {
            double lhs, rhs, min_sine;
            bool clean;
            if (gon == 5) {
                const Index A = perm[0], B = perm[1], C = perm[2], D = perm[3], E = perm[4];
                const Index as[10] = {D, A, A, A, C, C, A, D, A, A};
                const Index bs[10] = {A, B, C, D, E, A, B, C, D, E};
                const Index cs[10] = {E, D, B, C, D, D, C, E, B, D};
                clean = product_sides(space, as, bs, cs, 10, lhs, rhs, min_sine);
            } else {
                const Index A = perm[0], B = perm[1], C = perm[2], D = perm[3], E = perm[4],
                            F = perm[5];
                const Index as[12] = {E, A, A, C, C, E, C, A, E, C, A, E};
                const Index bs[12] = {A, B, C, D, E, F, A, B, C, D, E, F};
                const Index cs[12] = {F, E, B, A, D, C, D, C, F, E, B, A};
                clean = product_sides(space, as, bs, cs, 12, lhs, rhs, min_sine);
            }
            if (!clean) {
                worst.offer({names(space, perm), lhs, rhs, identity_residual(lhs, rhs)},
                            true);
            } else if (std::abs(lhs - rhs) > eps * std::max({1.0, lhs, rhs})) {
                worst.offer({names(space, perm), lhs, rhs, identity_residual(lhs, rhs)},
                            false);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (worst.any) report.violations.push_back(worst.violation);
    });
    finish(report);
    return report;
}

} // namespace

CheckReport check_pentagon_identities(const AngleSpace& space) {
    return check_gon_identity(space, 5, Condition::pentagon);
}

CheckReport check_hexagon_identities(const AngleSpace& space) {
    return check_gon_identity(space, 6, Condition::hexagon);
}

CheckReport check_global_compatibility(const AngleSpace& space) {
    CheckReport report{Condition::global_compatibility, true, {}};
    for (CheckReport part : {check_pentagon_identities(space), check_hexagon_identities(space)}) {
        report.violations.insert(report.violations.end(),
                                 std::make_move_iterator(part.violations.begin()),
                                 std::make_move_iterator(part.violations.end()));
    }
    finish(report);
    return report;
}

MetrizationDecision admits_metric(const AngleSpace& space) {
    MetrizationDecision dec;
    bool trivial = true;
    const Index n = space.size();
    for (Index i = 0; i < n && trivial; ++i)
        for (Index j = i + 1; j < n && trivial; ++j)
            for (Index k = j + 1; k < n && trivial; ++k)
                if (!space.betweenness().collinear(i, j, k)) trivial = false;
    dec.trivial = trivial;
    dec.euclidean = check_euclidean(space);
    dec.second_axiom = check_second_axiom(space);
    dec.tetragon = check_tetragon_metrizability(space);
    dec.global = check_global_compatibility(space);
    dec.admits_metric = trivial || (dec.euclidean.passed && dec.second_axiom.passed &&
                                    dec.tetragon.passed && dec.global.passed);
    dec.unique_up_to_scale = dec.admits_metric && !trivial;
    return dec;
}

CheckReport check_stewart(const DistanceMatrix& metric) {
    CheckReport report{Condition::stewart, true, {}};
    const double eps = metric.tol().eps_rel;
    const Index n = metric.size();
    const BetweennessRelation rel = metric.metric_betweenness();
    for (Index b = 0; b < n; ++b) {
        for (Index c = b + 1; c < n; ++c) {
            for (Index m = 0; m < n; ++m) {
                if (m == b || m == c || !rel.between(b, m, c)) continue;
                for (Index a = 0; a < n; ++a) {
                    if (a == b || a == c || a == m) continue;
                    if (rel.collinear(a, b, c) || rel.collinear(a, b, m) ||
                        rel.collinear(a, m, c))
                        continue;
                    const double lhs = metric.d(a, c) * metric.d(a, c) * metric.d(b, m) +
                                       metric.d(a, b) * metric.d(a, b) * metric.d(m, c);
                    const double rhs =
                        metric.d(b, c) *
                        (metric.d(a, m) * metric.d(a, m) + metric.d(b, m) * metric.d(m, c));
                    if (std::abs(lhs - rhs) > eps * std::max({1.0, lhs, rhs})) {
                        report.violations.push_back({{metric.label(a), metric.label(b),
                                                      metric.label(c), metric.label(m)},
                                                     lhs, rhs, identity_residual(lhs, rhs)});
                    }
                }
            }
        }
    }
    finish(report);
    return report;
}

AngleSpace candidate_angles(const DistanceMatrix& metric) {
    const Index n = metric.size();
    const BetweennessRelation rel = metric.metric_betweenness();
    const double pi = std::numbers::pi;

    std::vector<std::array<std::string, 3>> triples;
    for (const auto& t : rel.triples()) {
        triples.push_back({metric.label(t[0]), metric.label(t[1]), metric.label(t[2])});
    }

    std::vector<AngleEntryInput> entries;
    for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) {
            if (a == b) continue;
            for (Index c = a + 1; c < n; ++c) {
                if (c == b) continue;
                double theta;
                if (rel.between(b, a, c) || rel.between(b, c, a)) {
                    theta = 0.0; // arms on one ray
                } else if (rel.between(a, b, c)) {
                    theta = pi; // vertex inside the segment
                } else {
                    // Extended precision: the squares can cancel almost
                    // completely near 0 and pi, and downstream consumers
                    // divide by the sines of these angles.
                    const long double ab = metric.d(a, b);
                    const long double cb = metric.d(c, b);
                    const long double ac = metric.d(a, c);
                    const long double cosv =
                        (ab * ab + cb * cb - ac * ac) / (2.0L * ab * cb);
                    theta = static_cast<double>(std::acos(std::clamp(cosv, -1.0L, 1.0L)));
                }
                entries.push_back({metric.label(a), metric.label(b), metric.label(c), theta});
            }
        }
    }
    return build_angle_space(metric.labels(), triples, entries, metric.tol());
}

AngleSpace angles_from_metric(const DistanceMatrix& metric) {
    CheckReport report = check_stewart(metric);
    if (!report.passed) throw StewartViolationError(std::move(report));
    return candidate_angles(metric);
}

} // namespace anglespace
