#include <doctest.h>

#include "helpers.hpp"

using namespace anglespace;
using doctest::Approx;

TEST_CASE("distance from base follows the law of sines") {
    const AngleSpace eq = fx::equilateral_space();
    CHECK(distance_from_base(eq, {"A", "B", 2.0}, "A", "C") == Approx(2.0).epsilon(1e-15));
    CHECK(distance_from_base(eq, {"A", "B", 2.0}, "B", "C") == Approx(2.0).epsilon(1e-15));
    CHECK(distance_from_base(eq, {"A", "B", 2.0}, "A", "B") == 2.0); // the base itself
    CHECK(distance_from_base(eq, {"A", "B", 2.0}, "B", "A") == 2.0);

    const AngleSpace iso = fx::right_isoceles_space();
    CHECK(distance_from_base(iso, {"A", "B", 1.0}, "B", "C") ==
          Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(distance_from_base(iso, {"A", "B", 1.0}, "A", "C") == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("distance from base validates its arguments") {
    const AngleSpace eq = fx::equilateral_space();
    CHECK_THROWS_AS(distance_from_base(eq, {"A", "A", 1.0}, "B", "C"), PreconditionError);
    CHECK_THROWS_AS(distance_from_base(eq, {"A", "B", 0.0}, "B", "C"), PreconditionError);
    CHECK_THROWS_AS(distance_from_base(eq, {"A", "B", -1.0}, "B", "C"), PreconditionError);
    CHECK_THROWS_AS(distance_from_base(eq, {"A", "B", 1.0}, "C", "C"), PreconditionError);
    CHECK_THROWS_AS(distance_from_base(eq, {"A", "B", 1.0}, "C", "X"), PreconditionError);

    // All four points on one line: no trigon can anchor the ratio.
    const AngleSpace line = fx::collinear_space(4);
    CHECK_THROWS_AS(distance_from_base(line, {"A", "B", 1.0}, "C", "D"),
                    DegenerateGeometryError);
}

TEST_CASE("square angles reconstruct the square") {
    const DistanceMatrix m = metrize(fx::square_space(), {"A", "B", 1.0});
    CHECK(m.d("A", "B") == 1.0);
    CHECK(m.d("B", "C") == Approx(1.0).epsilon(1e-12));
    CHECK(m.d("C", "D") == Approx(1.0).epsilon(1e-12));
    CHECK(m.d("A", "D") == Approx(1.0).epsilon(1e-12));
    CHECK(m.d("A", "C") == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(m.d("B", "D") == Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("equilateral angles scale with lambda") {
    const DistanceMatrix m = metrize(fx::equilateral_space(), {"A", "B", 5.0});
    CHECK(m.d("A", "B") == 5.0);
    CHECK(m.d("A", "C") == Approx(5.0).epsilon(1e-12));
    CHECK(m.d("B", "C") == Approx(5.0).epsilon(1e-12));
}

TEST_CASE("pairs collinear with the base go through an auxiliary point") {
    // A, B, C, D on a line with E and F off it.  Measuring (C,D) from base
    // (A,B) must detour through an off-line point and still land on the
    // euclidean values.
    const std::vector<std::string> labels{"A", "B", "C", "D", "E", "F"};
    const std::vector<std::vector<double>> coords{
        {0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {0.0, 1.0}, {1.0, 2.0}};
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& t : std::vector<std::array<std::string, 3>>{
             {"A", "B", "C"}, {"A", "B", "D"}, {"A", "C", "D"}, {"B", "C", "D"}})
        triples.push_back(t);
    const AngleSpace s = space_from_points(labels, coords, triples);
    const DistanceMatrix oracle = metric_from_points(labels, coords);

    const DistanceMatrix m = metrize(s, {"A", "B", 1.0});
    CHECK(fx::max_rel_gap(m, oracle) <= 1e-9);
    CHECK(m.d("C", "D") == Approx(1.0).epsilon(1e-12));
    CHECK(m.d("A", "D") == Approx(3.0).epsilon(1e-12));

    // The low-level evaluator refuses the all-collinear quadruple.
    CHECK_THROWS_AS(distance_from_base(s, {"A", "B", 1.0}, "C", "D"),
                    DegenerateGeometryError);
}

TEST_CASE("trivial spaces have no determined metric") {
    CHECK_THROWS_WITH_AS(metrize(fx::collinear_space(4), {"A", "B", 1.0}),
                         doctest::Contains("metric not unique"), TrivialSpaceError);
}

TEST_CASE("metrize needs at least three points") {
    const AngleSpace pair = build_angle_space({"A", "B"}, {}, {});
    CHECK_THROWS_AS(metrize(pair, {"A", "B", 1.0}), PreconditionError);
}

TEST_CASE("inconsistent angles are rejected with the worst trigon") {
    // The square table with one angle bent by 0.05: reconstruction routes
    // disagree with the law of cosines beyond tolerance.
    const AngleSpace bad = fx::perturbed(fx::square_space(), "B", "A", "C", 0.05);
    CHECK_THROWS_AS(metrize(bad, {"A", "B", 1.0}), MetrizeError);
    try {
        metrize(bad, {"A", "B", 1.0});
    } catch (const MetrizeError& e) {
        CHECK(e.residual > 1e-9);
        CHECK(e.tuple.size() == 3);
    }
}

TEST_CASE("reconstruction is independent of the base up to scale") {
    const GeneratedInstance g = gen_euclidean(2, 7, 23, 0);
    const std::string l0 = g.space.label(0), l1 = g.space.label(1);
    const DistanceMatrix m1 = metrize(g.space, {l0, l1, g.metric.d(l0, l1)});
    const std::string l2 = g.space.label(2), l5 = g.space.label(5);
    const DistanceMatrix m2 = metrize(g.space, {l2, l5, m1.d(l2, l5)});
    CHECK(fx::max_rel_gap(m1, m2) <= 1e-9);
}

TEST_CASE("reconstruction is linear in lambda") {
    const AngleSpace s = gen_euclidean(2, 5, 29, 0).space;
    const DistanceMatrix half = metrize(s, {s.label(0), s.label(1), 0.75});
    const DistanceMatrix full = metrize(s, {s.label(0), s.label(1), 1.5});
    for (Index i = 0; i < half.size(); ++i)
        for (Index j = i + 1; j < half.size(); ++j)
            CHECK(full.d(i, j) == 2.0 * half.d(i, j)); // power-of-two exact
}

TEST_CASE("metrize recovers sampled metrics") {
    for (const auto& [dim, count, seed, coll] :
         {std::array<std::size_t, 4>{2, 6, 31, 1}, std::array<std::size_t, 4>{3, 7, 37, 0}}) {
        const GeneratedInstance g = gen_euclidean(dim, count, seed, coll);
        const std::string l0 = g.space.label(0), l1 = g.space.label(1);
        const DistanceMatrix m = metrize(g.space, {l0, l1, g.metric.d(l0, l1)});
        CHECK(fx::max_rel_gap(m, g.metric) <= 1e-9);
        // The reconstructed metric carries the same collinearity structure.
        CHECK(m.metric_betweenness().triples() == g.space.betweenness().triples());
    }
}

TEST_CASE("residuals quantify angle-metric compatibility") {
    const DistanceMatrix unit = DistanceMatrix::from_entries(
        {"A", "B", "C"}, {{"A", "B", 1.0}, {"A", "C", 1.0}, {"B", "C", 1.0}});
    const CompatibilityResiduals exact = residuals(fx::equilateral_space(), unit);
    CHECK(exact.max_law_of_cosines_residual <= 1e-15);
    CHECK(exact.max_law_of_sines_residual <= 1e-15);

    const AngleSpace sq = fx::square_space();
    const CompatibilityResiduals good = residuals(sq, metrize(sq, {"A", "B", 1.0}));
    CHECK(good.max_law_of_cosines_residual <= 1e-12);
    CHECK(good.max_law_of_sines_residual <= 1e-12);

    // Square angles against an all-ones metric: the diagonal trigons imply
    // sqrt(2) where the metric says 1.
    const DistanceMatrix ones = DistanceMatrix::from_entries({"A", "B", "C", "D"},
                                                             {{"A", "B", 1.0},
                                                              {"A", "C", 1.0},
                                                              {"A", "D", 1.0},
                                                              {"B", "C", 1.0},
                                                              {"B", "D", 1.0},
                                                              {"C", "D", 1.0}});
    const CompatibilityResiduals off = residuals(sq, ones);
    CHECK(off.max_law_of_cosines_residual ==
          Approx(0.29289321881345254).epsilon(1e-9));
    CHECK(off.worst_law_of_cosines_tuple.size() == 3);
    CHECK(off.max_law_of_sines_residual > 0.2);

    CHECK_THROWS_AS(residuals(fx::equilateral_space(), fx::square_metric()),
                    PreconditionError);
}
