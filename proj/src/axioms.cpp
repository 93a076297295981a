#include "anglespace/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace anglespace {

namespace {

void sort_canonical(std::vector<AxiomViolation>& violations) {
    std::sort(violations.begin(), violations.end(),
              [](const AxiomViolation& a, const AxiomViolation& b) {
                  if (a.axiom != b.axiom) return a.axiom < b.axiom;
                  return a.tuple < b.tuple;
              });
}

} // namespace

AxiomReport check_betweenness_axioms(const AngleSpace& space) {
    AxiomReport report;
    const auto& rel = space.betweenness();
    auto name = [&](Index i) { return space.label(i); };

    // Distinctness and orientation symmetry hold by representation; the
    // remaining structural requirement is that no end point of a stored
    // triple lies between the other two.
    for (const auto& t : rel.triples()) {
        const Index x = t[0], m = t[1], z = t[2];
        if (rel.between(m, x, z)) {
            report.violations.push_back({"B3", {name(x), name(m), name(z)},
                                         name(x) + " is also between " + name(m) + " and " +
                                             name(z),
                                         std::nullopt});
        }
        if (rel.between(m, z, x)) {
            report.violations.push_back({"B3", {name(x), name(m), name(z)},
                                         name(z) + " is also between " + name(m) + " and " +
                                             name(x),
                                         std::nullopt});
        }
    }

    // Strong transitivity: two stored triples sharing two or more points
    // force every 3-subset of their union onto one line.
    std::set<std::array<Index, 3>> flagged;
    const std::vector<BetweennessRelation::Triple> triples(rel.triples().begin(),
                                                           rel.triples().end());
    for (std::size_t s = 0; s < triples.size(); ++s) {
        for (std::size_t t = s + 1; t < triples.size(); ++t) {
            std::set<Index> a(triples[s].begin(), triples[s].end());
            std::set<Index> b(triples[t].begin(), triples[t].end());
            std::vector<Index> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(common));
            if (common.size() < 2) continue;
            std::vector<Index> both;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                           std::back_inserter(both));
            for (std::size_t i = 0; i < both.size(); ++i) {
                for (std::size_t j = i + 1; j < both.size(); ++j) {
                    for (std::size_t k = j + 1; k < both.size(); ++k) {
                        const std::array<Index, 3> sub{both[i], both[j], both[k]};
                        if (rel.collinear(sub[0], sub[1], sub[2])) continue;
                        if (!flagged.insert(sub).second) continue;
                        report.violations.push_back(
                            {"B4", {name(sub[0]), name(sub[1]), name(sub[2])},
                             "subset is not collinear although {" + name(triples[s][0]) + "," +
                                 name(triples[s][1]) + "," + name(triples[s][2]) + "} and {" +
                                 name(triples[t][0]) + "," + name(triples[t][1]) + "," +
                                 name(triples[t][2]) + "} share two points",
                             std::nullopt});
                    }
                }
            }
        }
    }

    sort_canonical(report.violations);
    report.passed = report.violations.empty();
    return report;
}

AxiomReport check_angle_axioms(const AngleSpace& space) {
    AxiomReport report;
    const auto& rel = space.betweenness();
    const double eps = space.tol().eps_angle;
    const double pi = std::numbers::pi;
    const Index n = space.size();
    auto name = [&](Index i) { return space.label(i); };

    // Value constraints per vertex and arm pair.
    for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) {
            if (a == b) continue;
            for (Index c = a + 1; c < n; ++c) {
                if (c == b) continue;
                const double theta = space.angle(a, b, c);
                const bool zero_forced = rel.between(b, a, c) || rel.between(b, c, a);
                const bool pi_forced = rel.between(a, b, c);
                if (zero_forced && theta > eps) {
                    report.violations.push_back(
                        {"ii", {name(a), name(b), name(c)},
                         "arms lie on one ray from the vertex, expected angle 0", theta});
                }
                if (pi_forced && std::abs(theta - pi) > eps) {
                    report.violations.push_back(
                        {"ii", {name(a), name(b), name(c)},
                         "vertex lies between the arms, expected angle pi",
                         std::abs(theta - pi)});
                }
                if (!zero_forced && !pi_forced && theta <= eps) {
                    report.violations.push_back(
                        {"ii", {name(a), name(b), name(c)},
                         "no collinearity recorded, expected a strictly positive angle",
                         theta});
                }
            }
        }
    }

    // Points on one ray subtend equal angles: for a stored triple the
    // middle and the far end look identical from either end point.
    for (const auto& t : rel.triples()) {
        const Index ends[2] = {t[0], t[2]};
        const Index mid = t[1];
        for (int side = 0; side < 2; ++side) {
            const Index v = ends[side];
            const Index far = ends[1 - side];
            for (Index w = 0; w < n; ++w) {
                if (w == v) continue;
                const double near_angle = space.angle(w, v, mid);
                const double far_angle = space.angle(w, v, far);
                if (std::abs(near_angle - far_angle) > eps) {
                    report.violations.push_back(
                        {"iii", {name(v), name(mid), name(far), name(w)},
                         "angle(" + name(w) + "," + name(v) + "," + name(mid) +
                             ") != angle(" + name(w) + "," + name(v) + "," + name(far) +
                             ") although " + name(mid) + " lies between " + name(v) +
                             " and " + name(far),
                         std::abs(near_angle - far_angle)});
                }
            }
        }
    }

    sort_canonical(report.violations);
    report.passed = report.violations.empty();
    return report;
}

bool is_trivial(const AngleSpace& space) {
    const Index n = space.size();
    if (n < 3) throw PreconditionError("triviality requires at least 3 points");
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            for (Index k = j + 1; k < n; ++k)
                if (!space.betweenness().collinear(i, j, k)) return false;
    return true;
}

} // namespace anglespace
