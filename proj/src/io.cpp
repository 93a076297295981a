#include "anglespace/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>

#include "anglespace/detail/determinant.hpp"

namespace anglespace {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("document is not valid JSON: ") + e.what());
    }
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
    if (!obj.is_object()) throw ParseError(where + " must be an object");
    for (const char* key : required) {
        if (!obj.contains(key)) {
            throw ParseError(where + " is missing field '" + key + "'");
        }
    }
    for (const auto& item : obj.items()) {
        const auto known = [&](std::initializer_list<const char*> list) {
            return std::any_of(list.begin(), list.end(),
                               [&](const char* k) { return item.key() == k; });
        };
        if (!known(required) && !known(optional)) {
            throw ParseError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

double number_at(const json& value, const std::string& where) {
    if (!value.is_number()) throw ParseError(where + " must be a number");
    return value.get<double>();
}

std::string string_at(const json& value, const std::string& where) {
    if (!value.is_string()) throw ParseError(where + " must be a string");
    return value.get<std::string>();
}

void check_schema_version(const json& doc, const std::string& where) {
    const json& v = doc.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != 1) {
        throw ParseError(where + " has unsupported schema_version (expected 1)");
    }
}

std::vector<std::string> points_at(const json& doc, const std::string& where) {
    const json& pts = doc.at("points");
    if (!pts.is_array()) throw ParseError(where + ".points must be an array");
    std::vector<std::string> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.push_back(string_at(pts[i], where + ".points[" + std::to_string(i) + "]"));
    }
    return out;
}

ToleranceConfig tolerances_at(const json& doc, const ToleranceConfig& fallback) {
    ToleranceConfig tol = fallback;
    if (!doc.contains("tolerances")) return tol;
    const json& t = doc.at("tolerances");
    check_keys(t, "tolerances", {}, {"eps_angle", "eps_rel", "eps_det"});
    if (t.contains("eps_angle")) tol.eps_angle = number_at(t["eps_angle"], "tolerances.eps_angle");
    if (t.contains("eps_rel")) tol.eps_rel = number_at(t["eps_rel"], "tolerances.eps_rel");
    if (t.contains("eps_det")) tol.eps_det = number_at(t["eps_det"], "tolerances.eps_det");
    tol.validate();
    return tol;
}

json space_json(const AngleSpace& space) {
    json doc;
    doc["schema_version"] = 1;
    doc["points"] = space.labels();
    json bt = json::array();
    for (const auto& t : space.betweenness().triples()) {
        bt.push_back(json::array({space.label(t[0]), space.label(t[1]), space.label(t[2])}));
    }
    doc["betweenness"] = std::move(bt);
    json angles = json::array();
    const Index n = space.size();
    for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) {
            if (a == b) continue;
            for (Index c = a + 1; c < n; ++c) {
                if (c == b) continue;
                json entry;
                entry["a"] = space.label(a);
                entry["b"] = space.label(b);
                entry["c"] = space.label(c);
                entry["theta_radians"] = space.angle(a, b, c);
                angles.push_back(std::move(entry));
            }
        }
    }
    doc["angles"] = std::move(angles);
    json tol;
    tol["eps_angle"] = space.tol().eps_angle;
    tol["eps_rel"] = space.tol().eps_rel;
    tol["eps_det"] = space.tol().eps_det;
    doc["tolerances"] = std::move(tol);
    return doc;
}

json metric_json(const DistanceMatrix& metric) {
    json doc;
    doc["schema_version"] = 1;
    doc["points"] = metric.labels();
    json distances = json::array();
    const Index n = metric.size();
    for (Index p = 0; p < n; ++p) {
        for (Index q = p + 1; q < n; ++q) {
            json entry;
            entry["p"] = metric.label(p);
            entry["q"] = metric.label(q);
            entry["d"] = metric.d(p, q);
            distances.push_back(std::move(entry));
        }
    }
    doc["distances"] = std::move(distances);
    return doc;
}

json coordinates_json(const Coordinates& coords) {
    json doc;
    doc["schema_version"] = 1;
    doc["ambient_dim"] = coords.ambient_dim;
    doc["points"] = coords.labels;
    json rows = json::array();
    for (std::size_t i = 0; i < coords.labels.size(); ++i) {
        json entry;
        entry["p"] = coords.labels[i];
        entry["x"] = coords.x[i];
        rows.push_back(std::move(entry));
    }
    doc["coordinates"] = std::move(rows);
    return doc;
}

// Geometry helpers shared by the coordinate builders and the generator.
// Extended precision keeps the arccos path accurate enough that document
// angles are faithful to the sampled configuration at the last bit.

long double squared_distance(const std::vector<double>& p, const std::vector<double>& q) {
    long double sum = 0.0L;
    for (std::size_t t = 0; t < p.size(); ++t) {
        const long double diff = static_cast<long double>(p[t]) - static_cast<long double>(q[t]);
        sum += diff * diff;
    }
    return sum;
}

// Angle at v subtended by a and c, from squared side lengths.
double arc_angle(long double sq_va, long double sq_vc, long double sq_ac) {
    const long double denom = 2.0L * std::sqrt(sq_va) * std::sqrt(sq_vc);
    if (denom == 0.0L) throw DegenerateGeometryError("coincident points have no angle");
    long double cosine = (sq_va + sq_vc - sq_ac) / denom;
    cosine = std::clamp(cosine, -1.0L, 1.0L);
    return static_cast<double>(std::acos(cosine));
}

struct SortedGeometry {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> coords;
};

SortedGeometry sort_geometry(const std::vector<std::string>& labels,
                             const std::vector<std::vector<double>>& coords) {
    if (labels.size() != coords.size()) {
        throw PreconditionError("labels and coordinate rows must match in count");
    }
    if (labels.empty()) throw PreconditionError("at least one point is required");
    const std::size_t dim = coords.front().size();
    for (const auto& row : coords) {
        if (row.size() != dim || dim == 0) {
            throw PreconditionError("coordinate rows must share one nonzero dimension");
        }
    }
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return labels[i] < labels[j]; });
    SortedGeometry out;
    out.labels.reserve(labels.size());
    out.coords.reserve(labels.size());
    for (std::size_t i : order) {
        out.labels.push_back(labels[i]);
        out.coords.push_back(coords[i]);
    }
    return out;
}

} // namespace

AngleSpace parse_space(const std::string& text, const std::optional<ToleranceConfig>& fallback) {
    const json doc = parse_text(text);
    check_keys(doc, "space document", {"schema_version", "points", "betweenness", "angles"},
               {"tolerances"});
    check_schema_version(doc, "space document");
    std::vector<std::string> points = points_at(doc, "space document");
    const ToleranceConfig tol = tolerances_at(doc, fallback.value_or(ToleranceConfig{}));

    const json& bt = doc.at("betweenness");
    if (!bt.is_array()) throw ParseError("betweenness must be an array");
    std::vector<std::array<std::string, 3>> triples;
    triples.reserve(bt.size());
    for (std::size_t i = 0; i < bt.size(); ++i) {
        const std::string where = "betweenness[" + std::to_string(i) + "]";
        const json& t = bt[i];
        if (!t.is_array() || t.size() != 3) {
            throw ParseError(where + " must be a [a, b, c] triple");
        }
        triples.push_back({string_at(t[0], where + "[0]"), string_at(t[1], where + "[1]"),
                           string_at(t[2], where + "[2]")});
    }

    const json& angles = doc.at("angles");
    if (!angles.is_array()) throw ParseError("angles must be an array");
    std::vector<AngleEntryInput> entries;
    entries.reserve(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const std::string where = "angles[" + std::to_string(i) + "]";
        const json& e = angles[i];
        check_keys(e, where, {"a", "b", "c", "theta_radians"});
        entries.push_back({string_at(e["a"], where + ".a"), string_at(e["b"], where + ".b"),
                           string_at(e["c"], where + ".c"),
                           number_at(e["theta_radians"], where + ".theta_radians")});
    }
    return build_angle_space(std::move(points), triples, entries, tol);
}

DistanceMatrix parse_metric(const std::string& text,
                            const std::optional<ToleranceConfig>& fallback) {
    const json doc = parse_text(text);
    check_keys(doc, "metric document", {"schema_version", "points", "distances"});
    check_schema_version(doc, "metric document");
    std::vector<std::string> points = points_at(doc, "metric document");

    const json& distances = doc.at("distances");
    if (!distances.is_array()) throw ParseError("distances must be an array");
    std::vector<DistanceEntryInput> entries;
    entries.reserve(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const std::string where = "distances[" + std::to_string(i) + "]";
        const json& e = distances[i];
        check_keys(e, where, {"p", "q", "d"});
        entries.push_back({string_at(e["p"], where + ".p"), string_at(e["q"], where + ".q"),
                           number_at(e["d"], where + ".d")});
    }
    return DistanceMatrix::from_entries(std::move(points), entries,
                                        fallback.value_or(ToleranceConfig{}));
}

std::string serialize_space(const AngleSpace& space) { return space_json(space).dump(2) + "\n"; }

std::string serialize_metric(const DistanceMatrix& metric) {
    return metric_json(metric).dump(2) + "\n";
}

std::string serialize_coordinates(const Coordinates& coords) {
    return coordinates_json(coords).dump(2) + "\n";
}

AngleSpace space_from_points(const std::vector<std::string>& labels,
                             const std::vector<std::vector<double>>& coords,
                             const std::vector<std::array<std::string, 3>>& betweenness,
                             const ToleranceConfig& tol) {
    const SortedGeometry geo = sort_geometry(labels, coords);
    const Index n = geo.labels.size();
    const auto index_of = [&](const std::string& label) {
        const auto it = std::lower_bound(geo.labels.begin(), geo.labels.end(), label);
        if (it == geo.labels.end() || *it != label) {
            throw PreconditionError("unknown point '" + label + "'");
        }
        return static_cast<Index>(it - geo.labels.begin());
    };
    BetweennessRelation rel;
    for (const auto& t : betweenness) {
        rel.insert(index_of(t[0]), index_of(t[1]), index_of(t[2]));
    }

    std::vector<long double> sq(n * n, 0.0L);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            sq[i * n + j] = sq[j * n + i] = squared_distance(geo.coords[i], geo.coords[j]);
        }
    }

    std::vector<AngleEntryInput> entries;
    for (Index b = 0; b < n; ++b) {
        for (Index a = 0; a < n; ++a) {
            if (a == b) continue;
            for (Index c = a + 1; c < n; ++c) {
                if (c == b) continue;
                double theta;
                if (rel.between(a, b, c)) {
                    theta = std::numbers::pi;
                } else if (rel.between(b, a, c) || rel.between(b, c, a)) {
                    theta = 0.0;
                } else {
                    theta = arc_angle(sq[b * n + a], sq[b * n + c], sq[a * n + c]);
                }
                entries.push_back({geo.labels[a], geo.labels[b], geo.labels[c], theta});
            }
        }
    }
    return build_angle_space(geo.labels, betweenness, entries, tol);
}

DistanceMatrix metric_from_points(const std::vector<std::string>& labels,
                                  const std::vector<std::vector<double>>& coords,
                                  const ToleranceConfig& tol) {
    const SortedGeometry geo = sort_geometry(labels, coords);
    const Index n = geo.labels.size();
    std::vector<double> grid(n * n, 0.0);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double d =
                static_cast<double>(std::sqrt(squared_distance(geo.coords[i], geo.coords[j])));
            grid[i * n + j] = grid[j * n + i] = d;
        }
    }
    return DistanceMatrix(geo.labels, std::move(grid), tol);
}

namespace {

constexpr int kMaxRedraws = 64;
constexpr double kAngleMargin = 0.01;   // radians away from 0 and pi
constexpr double kVolumeMargin = 1e-3;  // best dim-simplex Gram determinant

double distance_margin(std::size_t dim) { return dim == 1 ? 0.02 : 0.05; }

std::string point_label(std::size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "P%02zu", i + 1);
    return buf;
}

// Planted triples must be collinear as a fact of arithmetic, not by a
// floating comparison; verified on the shared 2^-27 grid.
void assert_exact_collinear(const std::vector<double>& p, const std::vector<double>& m,
                            const std::vector<double>& q) {
    const auto on_grid = [](double v) { return static_cast<long long>(v * 134217728.0); };
    const std::size_t dim = p.size();
    for (std::size_t s = 0; s < dim; ++s) {
        for (std::size_t t = s + 1; t < dim; ++t) {
            const long long ms = on_grid(m[s]) - on_grid(p[s]);
            const long long mt = on_grid(m[t]) - on_grid(p[t]);
            const long long qs = on_grid(q[s]) - on_grid(p[s]);
            const long long qt = on_grid(q[t]) - on_grid(p[t]);
            if (ms * qt != mt * qs) {
                throw Error("generator invariant violated: planted triple is not collinear");
            }
        }
    }
}

} // namespace

GeneratedInstance gen_euclidean(std::size_t dim, std::size_t count, std::uint64_t seed,
                                std::size_t collinear, const ToleranceConfig& tol) {
    tol.validate();
    if (dim < 1) throw PreconditionError("dimension must be at least 1");
    if (count < 3) throw PreconditionError("at least 3 points are required");
    if (count > 99) throw PreconditionError("at most 99 points are supported");
    if (dim == 1 && collinear > 0) {
        throw PreconditionError(
            "infeasible collinear count: on a line every triple is already collinear");
    }
    if (count < collinear + 2) {
        throw PreconditionError("infeasible collinear count: too few free points");
    }
    const std::size_t free_count = count - collinear;
    if (collinear > free_count * (free_count - 1) / 2) {
        throw PreconditionError("infeasible collinear count: not enough point pairs");
    }

    std::mt19937_64 rng(seed);
    const auto draw = [&rng] { return static_cast<double>(rng() >> 38) * 0x1p-26; };

    // Planted point i is the exact midpoint of the i-th pair of free
    // points in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < free_count && pairs.size() < collinear; ++i) {
        for (std::size_t j = i + 1; j < free_count && pairs.size() < collinear; ++j) {
            pairs.emplace_back(i, j);
        }
    }

    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
        for (std::size_t i = 0; i < free_count; ++i) {
            for (std::size_t t = 0; t < dim; ++t) pts[i][t] = draw();
        }
        for (std::size_t i = 0; i < collinear; ++i) {
            const auto& [a, b] = pairs[i];
            for (std::size_t t = 0; t < dim; ++t) {
                pts[free_count + i][t] = (pts[a][t] + pts[b][t]) / 2.0;
            }
        }

        // Construction facts: which triples are collinear, and in which order.
        std::vector<std::array<std::size_t, 3>> planted;
        if (dim == 1) {
            std::vector<std::size_t> line(count);
            std::iota(line.begin(), line.end(), 0);
            std::sort(line.begin(), line.end(),
                      [&](std::size_t i, std::size_t j) { return pts[i][0] < pts[j][0]; });
            for (std::size_t i = 0; i < count; ++i)
                for (std::size_t j = i + 1; j < count; ++j)
                    for (std::size_t k = j + 1; k < count; ++k)
                        planted.push_back({line[i], line[j], line[k]});
        } else {
            for (std::size_t i = 0; i < collinear; ++i) {
                planted.push_back({pairs[i].first, free_count + i, pairs[i].second});
            }
        }
        const auto is_planted = [&](std::size_t i, std::size_t j, std::size_t k) {
            if (dim == 1) return true;
            for (const auto& t : planted) {
                std::array<std::size_t, 3> s = t, u = {i, j, k};
                std::sort(s.begin(), s.end());
                std::sort(u.begin(), u.end());
                if (s == u) return true;
            }
            return false;
        };

        bool ok = true;
        const double min_d = distance_margin(dim);
        for (std::size_t i = 0; i < count && ok; ++i) {
            for (std::size_t j = i + 1; j < count && ok; ++j) {
                if (squared_distance(pts[i], pts[j]) <
                    static_cast<long double>(min_d) * min_d) {
                    ok = false;
                }
            }
        }
        for (std::size_t i = 0; i < count && ok; ++i) {
            for (std::size_t j = i + 1; j < count && ok; ++j) {
                for (std::size_t k = j + 1; k < count && ok; ++k) {
                    if (is_planted(i, j, k)) continue;
                    const long double ij = squared_distance(pts[i], pts[j]);
                    const long double ik = squared_distance(pts[i], pts[k]);
                    const long double jk = squared_distance(pts[j], pts[k]);
                    for (const double theta : {arc_angle(ij, ik, jk), arc_angle(ij, jk, ik),
                                               arc_angle(ik, jk, ij)}) {
                        if (theta < kAngleMargin || theta > std::numbers::pi - kAngleMargin) {
                            ok = false;
                        }
                    }
                }
            }
        }
        if (ok && dim >= 2 && free_count >= dim + 1) {
            // Some full-dimensional simplex of free points must be solidly
            // non-flat, so the sample's dimension is never a borderline
            // verdict.  Planted midpoints cannot contribute new directions,
            // so with fewer free points the sample simply spans less.
            double best = 0.0;
            detail::for_each_subset(free_count, dim + 1, [&](const std::vector<Index>& subset) {
                std::vector<double> g(dim * dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j) {
                        const long double s0i = squared_distance(pts[subset[0]], pts[subset[i + 1]]);
                        const long double s0j = squared_distance(pts[subset[0]], pts[subset[j + 1]]);
                        const long double sij =
                            squared_distance(pts[subset[i + 1]], pts[subset[j + 1]]);
                        g[i * dim + j] = static_cast<double>(0.5L * (s0i + s0j - sij));
                    }
                }
                best = std::max(best, detail::lu_determinant(std::move(g), dim));
            });
            if (best < kVolumeMargin) ok = false;
        }
        if (!ok) continue;

        std::vector<std::string> labels(count);
        for (std::size_t i = 0; i < count; ++i) labels[i] = point_label(i);
        std::vector<std::array<std::string, 3>> triples;
        triples.reserve(planted.size());
        for (const auto& t : planted) {
            if (dim >= 2) assert_exact_collinear(pts[t[0]], pts[t[1]], pts[t[2]]);
            triples.push_back({labels[t[0]], labels[t[1]], labels[t[2]]});
        }

        GeneratedInstance out{
            Coordinates{dim, labels, pts, 0.0},
            metric_from_points(labels, pts, tol),
            space_from_points(labels, pts, triples, tol),
        };
        for (Index i = 0; i < count; ++i) {
            for (Index j = i + 1; j < count; ++j) {
                const double got = out.coordinates.distance(i, j);
                const double want = out.metric.d(i, j);
                out.coordinates.max_distance_residual = std::max(
                    out.coordinates.max_distance_residual, std::abs(got - want) / want);
            }
        }
        return out;
    }
    throw PreconditionError("degenerate sample: margins not met after " +
                            std::to_string(kMaxRedraws) + " redraws for this seed");
}

std::string serialize_generated(const GeneratedInstance& instance) {
    json doc;
    doc["schema_version"] = 1;
    doc["coordinates"] = coordinates_json(instance.coordinates);
    doc["metric"] = metric_json(instance.metric);
    doc["space"] = space_json(instance.space);
    return doc.dump(2) + "\n";
}

} // namespace anglespace
