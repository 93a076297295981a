#include <doctest.h>

#include "helpers.hpp"

#include <set>

using namespace anglespace;
using doctest::Approx;

TEST_CASE("space documents round trip") {
    const AngleSpace eq = fx::equilateral_space();
    const std::string text = serialize_space(eq);
    CHECK(text.find("\"schema_version\"") != std::string::npos);
    CHECK(text.find("\"tolerances\"") != std::string::npos); // always emitted

    const AngleSpace back = parse_space(text);
    CHECK(back.labels() == eq.labels());
    CHECK(back.angle("B", "A", "C") == eq.angle("B", "A", "C"));
    CHECK(back.tol().eps_angle == eq.tol().eps_angle);

    // Serialization is a fixed point of parse-then-serialize.
    CHECK(serialize_space(back) == text);

    const AngleSpace stw = candidate_angles(fx::stewart_metric());
    CHECK(serialize_space(parse_space(serialize_space(stw))) == serialize_space(stw));
    const AngleSpace twice = parse_space(serialize_space(stw));
    CHECK(twice.betweenness().triples() == stw.betweenness().triples());
}

TEST_CASE("space documents parse from minimal text") {
    const std::string doc = R"({
      "schema_version": 1,
      "points": ["A", "B", "C"],
      "betweenness": [],
      "angles": [
        {"a": "B", "b": "A", "c": "C", "theta_radians": 1.0471975511965976},
        {"a": "A", "b": "B", "c": "C", "theta_radians": 1.0471975511965976},
        {"a": "A", "b": "C", "c": "B", "theta_radians": 1.0471975511965976}
      ]
    })";
    const AngleSpace s = parse_space(doc);
    CHECK(s.size() == 3);
    CHECK(s.angle("B", "A", "C") == Approx(fx::kPi / 3).epsilon(1e-15));
    CHECK(s.tol().eps_angle == 1e-9); // defaults when the document is silent
}

TEST_CASE("space document errors are precise") {
    CHECK_THROWS_AS(parse_space("{ not json"), ParseError);
    CHECK_THROWS_AS(parse_space("[1,2,3]"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_space(R"({"schema_version": 2, "points": [], "betweenness": [], "angles": []})"),
        doctest::Contains("schema_version"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_space(R"({"schema_version": 1, "betweenness": [], "angles": []})"),
        doctest::Contains("points"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_space(
            R"({"schema_version": 1, "points": ["A"], "betweenness": [], "angles": [], "extra": 1})"),
        doctest::Contains("extra"), ParseError);

    const std::string base = R"({"schema_version": 1, "points": ["A", "B", "C"],
        "betweenness": [)";
    CHECK_THROWS_AS(parse_space(base + R"(["A", "B"]], "angles": []})"), ParseError);
    CHECK_THROWS_AS(parse_space(base + R"(["A", "B", 3]], "angles": []})"), ParseError);

    // Unknown key inside an angle entry.
    CHECK_THROWS_WITH_AS(
        parse_space(R"({"schema_version": 1, "points": ["A", "B", "C"], "betweenness": [],
            "angles": [{"a": "B", "b": "A", "c": "C", "theta_radians": 1.0, "deg": 60}]})"),
        doctest::Contains("deg"), ParseError);
    // Angle as a string.
    CHECK_THROWS_AS(
        parse_space(R"({"schema_version": 1, "points": ["A", "B", "C"], "betweenness": [],
            "angles": [{"a": "B", "b": "A", "c": "C", "theta_radians": "1.0"}]})"),
        ParseError);

    // Out-of-range value propagates the constructor error, naming the entry.
    const std::string range = R"({"schema_version": 1, "points": ["A", "B", "C"],
        "betweenness": [],
        "angles": [{"a": "B", "b": "A", "c": "C", "theta_radians": 3.5},
                   {"a": "A", "b": "B", "c": "C", "theta_radians": 0.5},
                   {"a": "A", "b": "C", "c": "B", "theta_radians": 0.5}]})";
    CHECK_THROWS_WITH_AS(parse_space(range), doctest::Contains("(B,A,C)"), PreconditionError);
    CHECK_THROWS_WITH_AS(parse_space(range), doctest::Contains("3.5"), PreconditionError);
}

TEST_CASE("tolerance overrides follow document, then fallback, then defaults") {
    const std::string doc = R"({
      "schema_version": 1,
      "points": ["A", "B", "C"],
      "betweenness": [],
      "angles": [
        {"a": "B", "b": "A", "c": "C", "theta_radians": 1.0471975511965976},
        {"a": "A", "b": "B", "c": "C", "theta_radians": 1.0471975511965976},
        {"a": "A", "b": "C", "c": "B", "theta_radians": 1.0471975511965976}
      ],
      "tolerances": {"eps_angle": 1e-06}
    })";
    const AngleSpace s = parse_space(doc);
    CHECK(s.tol().eps_angle == 1e-6);
    CHECK(s.tol().eps_rel == 1e-9); // untouched keys keep their defaults

    // A fallback fills in when the document is silent, document wins otherwise.
    const ToleranceConfig fb{1e-5, 1e-5, 1e-5};
    const AngleSpace with_fb = parse_space(doc, fb);
    CHECK(with_fb.tol().eps_angle == 1e-6);
    CHECK(with_fb.tol().eps_rel == 1e-5);

    // Out-of-range tolerance values are rejected.
    std::string bad = doc;
    bad.replace(bad.find("1e-06"), 5, "0.5");
    CHECK_THROWS_AS(parse_space(bad), PreconditionError);
}

TEST_CASE("metric documents round trip and carry no tolerances") {
    const DistanceMatrix sq = fx::square_metric();
    const std::string text = serialize_metric(sq);
    CHECK(text.find("\"tolerances\"") == std::string::npos);

    const DistanceMatrix back = parse_metric(text);
    CHECK(back.labels() == sq.labels());
    CHECK(back.d("A", "C") == sq.d("A", "C"));
    CHECK(serialize_metric(back) == text);

    // The parser accepts a fallback tolerance configuration instead.
    const DistanceMatrix loose = parse_metric(text, ToleranceConfig{1e-3, 1e-3, 1e-3});
    CHECK(loose.tol().eps_rel == 1e-3);

    CHECK_THROWS_WITH_AS(
        parse_metric(R"({"schema_version": 1, "points": ["A", "B"], "distances": [],
                         "tolerances": {}})"),
        doctest::Contains("tolerances"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_metric(R"({"schema_version": 1, "points": ["A", "B", "C"],
            "distances": [{"p": "A", "q": "B", "d": 1.0}, {"p": "A", "q": "C", "d": 1.0}]})"),
        doctest::Contains("missing distance entry"), PreconditionError);
    CHECK_THROWS_AS(
        parse_metric(R"({"schema_version": 1, "points": ["A", "B"],
            "distances": [{"p": "A", "q": "B", "d": -2.0}]})"),
        PreconditionError);
    CHECK_THROWS_WITH_AS(
        parse_metric(R"({"schema_version": 1, "points": ["A", "B"],
            "distances": [{"p": "A", "q": "B", "d": 1.0, "unit": "m"}]})"),
        doctest::Contains("unit"), ParseError);
}

TEST_CASE("coordinate documents are canonical") {
    const Coordinates sq = realize(fx::square_metric(), 2);
    const std::string text = serialize_coordinates(sq);
    CHECK(text.find("\"ambient_dim\": 2") != std::string::npos);
    CHECK(text.find("\"coordinates\"") != std::string::npos);
    CHECK(serialize_coordinates(sq) == text); // deterministic
}

TEST_CASE("spaces and metrics built from coordinates") {
    const AngleSpace sq = fx::square_space();
    CHECK(sq.angle("B", "A", "D") == Approx(fx::kPi / 2).epsilon(1e-15));
    CHECK(sq.angle("B", "A", "C") == Approx(fx::kPi / 4).epsilon(1e-15));

    // Declared collinearity forces exact values.
    const AngleSpace line = fx::collinear_space(3);
    CHECK(line.angle("A", "B", "C") == fx::kPi);
    CHECK(line.angle("B", "A", "C") == 0.0);
    CHECK(line.angle("B", "C", "A") == 0.0);

    const DistanceMatrix m = fx::square_metric();
    CHECK(m.d("A", "B") == 1.0);
    CHECK(m.d("B", "D") == Approx(std::sqrt(2.0)).epsilon(1e-15));

    // Labels are attached to their coordinate rows before sorting.
    const DistanceMatrix swapped =
        metric_from_points({"B", "A"}, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(swapped.labels() == std::vector<std::string>{"A", "B"});
    CHECK(swapped.d("A", "B") == 1.0);

    CHECK_THROWS_AS(space_from_points({"A", "B"}, {{0.0, 0.0}}, {}), PreconditionError);
    CHECK_THROWS_AS(metric_from_points({"A", "B"}, {{0.0, 0.0}, {1.0}}), PreconditionError);
}

TEST_CASE("generator is deterministic per seed") {
    const GeneratedInstance a = gen_euclidean(2, 6, 5, 1);
    const GeneratedInstance b = gen_euclidean(2, 6, 5, 1);
    CHECK(serialize_generated(a) == serialize_generated(b));
    CHECK(serialize_space(a.space) == serialize_space(b.space));
    CHECK(serialize_metric(a.metric) == serialize_metric(b.metric));

    const GeneratedInstance c = gen_euclidean(2, 6, 6, 1);
    CHECK(serialize_generated(a) != serialize_generated(c));
}

TEST_CASE("generator rejects infeasible requests") {
    CHECK_THROWS_AS(gen_euclidean(0, 5, 1, 0), PreconditionError);
    CHECK_THROWS_AS(gen_euclidean(2, 2, 1, 0), PreconditionError);
    CHECK_THROWS_AS(gen_euclidean(1, 5, 1, 1), PreconditionError); // line: nothing to plant
    CHECK_THROWS_AS(gen_euclidean(2, 3, 1, 3), PreconditionError); // too few free points
    CHECK_THROWS_AS(gen_euclidean(2, 120, 1, 0), PreconditionError);
}

TEST_CASE("generator plants exact collinear triples") {
    const GeneratedInstance g = gen_euclidean(2, 6, 7, 1);
    CHECK(g.space.size() == 6);
    CHECK(g.space.betweenness().size() == 1);

    // The planted point is the midpoint of the first two free points; the
    // distance sums are exact, not within-tolerance.
    const auto t = *g.space.betweenness().triples().begin();
    const std::string a = g.space.label(t[0]), m = g.space.label(t[1]),
                      c = g.space.label(t[2]);
    CHECK(g.metric.d(a, m) + g.metric.d(m, c) == g.metric.d(a, c));
    CHECK(g.space.angle(a, m, c) == fx::kPi);
    CHECK(g.space.angle(m, a, c) == 0.0);

    CHECK(g.coordinates.labels.size() == 6);
    CHECK(g.coordinates.ambient_dim == 2);
    for (const auto& row : g.coordinates.x) {
        REQUIRE(row.size() == 2);
        for (double v : row) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0);
        }
    }

    // Margins: points are well separated.
    double min_d = 10.0;
    for (Index i = 0; i < g.metric.size(); ++i)
        for (Index j = i + 1; j < g.metric.size(); ++j)
            min_d = std::min(min_d, g.metric.d(i, j));
    CHECK(min_d >= 0.05);

    // One-dimensional instances are trivial: every triple collinear.
    const GeneratedInstance line = gen_euclidean(1, 4, 9, 0);
    CHECK(line.space.betweenness().size() == 4);
    CHECK(is_trivial(line.space));
}

TEST_CASE("generated instances satisfy the advertised checks") {
    // Oracle self-consistency at (2, 6, k=0).
    const GeneratedInstance flat = gen_euclidean(2, 6, 15, 0);
    CHECK(admits_metric(flat.space).admits_metric);
    CHECK(embeddable_angles(flat.space, 2));

    // A planted triple makes the second-axiom quantifier bite.
    const GeneratedInstance planted = gen_euclidean(2, 5, 13, 1);
    CHECK(planted.space.betweenness().size() == 1);
    CHECK(check_second_axiom(planted.space).passed);
}

TEST_CASE("full pipeline on a generated instance") {
    const GeneratedInstance g = gen_euclidean(2, 6, 11, 1);

    CHECK(check_betweenness_axioms(g.space).passed);
    CHECK(check_angle_axioms(g.space).passed);
    CHECK(admits_metric(g.space).admits_metric);

    const AngleSpace derived = angles_from_metric(g.metric);
    CHECK(derived.betweenness().size() == g.space.betweenness().size());

    const std::string l0 = g.space.label(0), l1 = g.space.label(1);
    const DistanceMatrix m = metrize(g.space, {l0, l1, g.metric.d(l0, l1)});
    CHECK(fx::max_rel_gap(m, g.metric) <= 1e-9);

    const Coordinates placed = realize(m, 2);
    CHECK(placed.max_distance_residual <= 1e-8);

    const Coordinates conformal = conformal_embed(g.space, 2, g.metric.d(l0, l1));
    CHECK(fx::max_angle_gap(g.space, conformal) <= 1e-8);
}
