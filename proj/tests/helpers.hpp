#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "anglespace/axioms.hpp"
#include "anglespace/compat.hpp"
#include "anglespace/core.hpp"
#include "anglespace/embed.hpp"
#include "anglespace/errors.hpp"
#include "anglespace/io.hpp"
#include "anglespace/metrize.hpp"

namespace fx {

constexpr double kPi = std::numbers::pi;

// Trigon with all angles pi/3 on {A,B,C}; no betweenness.
inline anglespace::AngleSpace equilateral_space() {
    return anglespace::build_angle_space({"A", "B", "C"}, {},
                                         {{"B", "A", "C", kPi / 3},
                                          {"A", "B", "C", kPi / 3},
                                          {"A", "C", "B", kPi / 3}});
}

// Right angle at A, pi/4 at B and C (sides AB = AC, hypotenuse BC).
inline anglespace::AngleSpace right_isoceles_space() {
    return anglespace::build_angle_space({"A", "B", "C"}, {},
                                         {{"B", "A", "C", kPi / 2},
                                          {"A", "B", "C", kPi / 4},
                                          {"A", "C", "B", kPi / 4}});
}

inline anglespace::DistanceMatrix right_isoceles_metric() {
    return anglespace::DistanceMatrix::from_entries(
        {"A", "B", "C"},
        {{"A", "B", 1.0}, {"A", "C", 1.0}, {"B", "C", std::sqrt(2.0)}});
}

inline std::vector<std::vector<double>> square_coords() {
    return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
}

// Unit square A(0,0) B(1,0) C(1,1) D(0,1); diagonals AC and BD.
inline anglespace::AngleSpace square_space() {
    return anglespace::space_from_points({"A", "B", "C", "D"}, square_coords(), {});
}

inline anglespace::DistanceMatrix square_metric() {
    return anglespace::metric_from_points({"A", "B", "C", "D"}, square_coords());
}

// Isoceles triangle with a cevian foot: AB = AC = BC = 4, BD = CD = 2,
// AD = 5.  D is metrically between B and C; the transversal length is
// incompatible with any euclidean placement.
inline anglespace::DistanceMatrix stewart_metric() {
    return anglespace::DistanceMatrix::from_entries({"A", "B", "C", "D"},
                                                    {{"A", "B", 4.0},
                                                     {"A", "C", 4.0},
                                                     {"B", "C", 4.0},
                                                     {"A", "D", 5.0},
                                                     {"B", "D", 2.0},
                                                     {"C", "D", 2.0}});
}

// Regular tetrahedron: all six distances 1.
inline anglespace::DistanceMatrix tetra_metric() {
    return anglespace::DistanceMatrix::from_entries({"A", "B", "C", "D"},
                                                    {{"A", "B", 1.0},
                                                     {"A", "C", 1.0},
                                                     {"A", "D", 1.0},
                                                     {"B", "C", 1.0},
                                                     {"B", "D", 1.0},
                                                     {"C", "D", 1.0}});
}

// Angle table of the regular tetrahedron: every angle pi/3.
inline anglespace::AngleSpace tetra_space() {
    std::vector<anglespace::AngleEntryInput> entries;
    const std::vector<std::string> labels{"A", "B", "C", "D"};
    for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t c = a + 1; c < 4; ++c)
                if (a != b && c != b)
                    entries.push_back({labels[a], labels[b], labels[c], kPi / 3});
    return anglespace::build_angle_space(labels, {}, entries);
}

// A(0,0) B(1,0) C(2,0) D(0,1): B between A and C, D off the line.
// Angles at D split additively at B; angles at B are supplementary.
inline anglespace::AngleSpace second_axiom_space() {
    return anglespace::space_from_points(
        {"A", "B", "C", "D"}, {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}},
        {{{"A", "B", "C"}}});
}

// Tetragon with two equilateral halves ACD and BCD glued to inconsistent
// triangles over AB: angle(A,C,B) = pi/6 but angle(A,D,B) = pi/5.  Every
// trigon sums to pi, yet no metric can satisfy all four at once.
inline anglespace::AngleSpace bad_tetragon_space() {
    return anglespace::build_angle_space({"A", "B", "C", "D"}, {},
                                         {{"C", "A", "D", kPi / 3},
                                          {"A", "C", "D", kPi / 3},
                                          {"A", "D", "C", kPi / 3},
                                          {"C", "B", "D", kPi / 3},
                                          {"B", "C", "D", kPi / 3},
                                          {"B", "D", "C", kPi / 3},
                                          {"B", "A", "C", kPi / 3},
                                          {"A", "C", "B", kPi / 6},
                                          {"A", "B", "C", kPi / 2},
                                          {"A", "B", "D", kPi / 3},
                                          {"A", "D", "B", kPi / 5},
                                          {"B", "A", "D", 7 * kPi / 15}});
}

// n points at x = 0, 1, ..., n-1 on a line, all triples collinear.
inline anglespace::AngleSpace collinear_space(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::string(1, static_cast<char>('A' + i)));
        coords.push_back({static_cast<double>(i)});
    }
    std::vector<std::array<std::string, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                triples.push_back({labels[i], labels[j], labels[k]});
    return anglespace::space_from_points(labels, coords, triples);
}

// Regular pentagon on the unit circle.
inline anglespace::AngleSpace pentagon_space() {
    std::vector<std::string> labels{"P1", "P2", "P3", "P4", "P5"};
    std::vector<std::vector<double>> coords;
    for (int i = 0; i < 5; ++i) {
        const double t = 2.0 * kPi * i / 5.0;
        coords.push_back({std::cos(t), std::sin(t)});
    }
    return anglespace::space_from_points(labels, coords, {});
}

// Every stored angle entry of a space, vertex-major, arms in label order.
inline std::vector<anglespace::AngleEntryInput> entries_of(const anglespace::AngleSpace& s) {
    std::vector<anglespace::AngleEntryInput> out;
    for (anglespace::Index b = 0; b < s.size(); ++b)
        for (anglespace::Index a = 0; a < s.size(); ++a) {
            if (a == b) continue;
            for (anglespace::Index c = a + 1; c < s.size(); ++c) {
                if (c == b) continue;
                out.push_back({s.label(a), s.label(b), s.label(c), s.angle(a, b, c)});
            }
        }
    return out;
}

inline std::vector<std::array<std::string, 3>> triples_of(const anglespace::AngleSpace& s) {
    std::vector<std::array<std::string, 3>> out;
    for (const auto& t : s.betweenness().triples())
        out.push_back({s.label(t[0]), s.label(t[1]), s.label(t[2])});
    return out;
}

// Same space with the entry (a, vertex, c) shifted by delta radians.
inline anglespace::AngleSpace perturbed(const anglespace::AngleSpace& s, const std::string& a,
                                        const std::string& vertex, const std::string& c,
                                        double delta) {
    auto entries = entries_of(s);
    bool hit = false;
    for (auto& e : entries) {
        if (e.b == vertex && ((e.a == a && e.c == c) || (e.a == c && e.c == a))) {
            e.theta_radians += delta;
            hit = true;
        }
    }
    if (!hit) throw anglespace::PreconditionError("perturbed: no such entry");
    return anglespace::build_angle_space(s.labels(), triples_of(s), entries, s.tol());
}

inline bool tuple_contains(const std::vector<std::string>& tuple, const std::string& label) {
    for (const auto& t : tuple)
        if (t == label) return true;
    return false;
}

// Largest relative gap between two distance matrices over the same labels.
inline double max_rel_gap(const anglespace::DistanceMatrix& a,
                          const anglespace::DistanceMatrix& b) {
    double worst = 0.0;
    for (anglespace::Index i = 0; i < a.size(); ++i)
        for (anglespace::Index j = i + 1; j < a.size(); ++j) {
            const double x = a.d(i, j);
            const double y = b.d(a.label(i), a.label(j));
            worst = std::max(worst, std::abs(x - y) / std::max(x, y));
        }
    return worst;
}

// Largest absolute gap between the angles induced by coordinates and the
// space's angle table, over every vertex and arm pair.
inline double max_angle_gap(const anglespace::AngleSpace& s,
                            const anglespace::Coordinates& coords) {
    double worst = 0.0;
    for (anglespace::Index b = 0; b < s.size(); ++b)
        for (anglespace::Index a = 0; a < s.size(); ++a) {
            if (a == b) continue;
            for (anglespace::Index c = a + 1; c < s.size(); ++c) {
                if (c == b) continue;
                const double got = anglespace::vertex_angle(
                    coords.x[coords.index(s.label(b))], coords.x[coords.index(s.label(a))],
                    coords.x[coords.index(s.label(c))]);
                worst = std::max(worst, std::abs(got - s.angle(a, b, c)));
            }
        }
    return worst;
}

} // namespace fx
