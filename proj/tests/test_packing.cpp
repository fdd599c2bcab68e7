#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "packrigid/json_io.hpp"
#include "packrigid/packing.hpp"
#include "packrigid/planar_lift.hpp"

using namespace packrigid;

namespace {

Packing two_spheres(const Vec3& c1, double r1, const Vec3& c2, double r2) {
    Packing pk;
    pk.dimension = 3;
    pk.labels = {"u", "v"};
    pk.centers = {c1, c2};
    pk.radii = {r1, r2};
    return pk;
}

PairClass classify(const Packing& pk, const std::string& v, const std::string& w) {
    for (const auto& pr : validate(pk).pairs)
        if ((pr.v == v && pr.w == w) || (pr.v == w && pr.w == v)) return pr.cls;
    throw std::logic_error("pair not found");
}

}  // namespace

TEST_SUITE_BEGIN("packing");

TEST_CASE("validate classifies tangency, overlap and near-contact") {
    auto tangent = two_spheres({0, 0, 0}, 1.0, {3, 0, 0}, 2.0);
    auto report = validate(tangent);
    CHECK(report.valid);
    CHECK(classify(tangent, "u", "v") == PairClass::Contact);

    auto overlapping = two_spheres({0, 0, 0}, 1.0, {2.5, 0, 0}, 2.0);
    report = validate(overlapping);
    CHECK_FALSE(report.valid);
    CHECK(report.overlaps().size() == 1);
    CHECK(classify(overlapping, "u", "v") == PairClass::Overlap);

    // Relative gap about 3.3e-11 < 1e-9: still a contact.
    auto near = two_spheres({0, 0, 0}, 1.0, {3.0000000001, 0, 0}, 2.0);
    CHECK(classify(near, "u", "v") == PairClass::Contact);
    CHECK(validate(near).valid);

    auto separated = two_spheres({0, 0, 0}, 1.0, {3.1, 0, 0}, 2.0);
    CHECK(classify(separated, "u", "v") == PairClass::Separated);
}

TEST_CASE("validate rejects bad shapes but not bad geometry") {
    auto pk = two_spheres({0, 0, 0}, 1.0, {3, 0, 0}, -2.0);
    CHECK_THROWS_WITH_AS(validate(pk), doctest::Contains("'v'"), std::invalid_argument);

    // Coincident centers are an overlap report, never an exception.
    auto coincident = two_spheres({1, 1, 1}, 1.0, {1, 1, 1}, 2.0);
    auto report = validate(coincident);
    CHECK_FALSE(report.valid);
    CHECK(report.overlaps().size() == 1);

    ToleranceProfile bad;
    bad.contact_tol = 0.5;  // >= 1e-2
    CHECK_THROWS_AS(validate(two_spheres({0, 0, 0}, 1, {3, 0, 0}, 2), bad),
                    std::invalid_argument);
}

TEST_CASE("validate is label-order symmetric") {
    auto pk = two_spheres({0, 0, 0}, 1.0, {3, 0, 0}, 2.0);
    Packing swapped = pk;
    std::swap(swapped.labels[0], swapped.labels[1]);
    std::swap(swapped.centers[0], swapped.centers[1]);
    std::swap(swapped.radii[0], swapped.radii[1]);
    auto a = validate(pk), b = validate(swapped);
    CHECK(a.pairs.size() == b.pairs.size());
    CHECK(a.pairs[0].cls == b.pairs[0].cls);
    CHECK(a.pairs[0].gap == doctest::Approx(b.pairs[0].gap).epsilon(1e-15));
}

TEST_CASE("declared graph mismatches are reported") {
    auto pk = two_spheres({0, 0, 0}, 1.0, {3, 0, 0}, 2.0);
    pk.declared_graph = Graph({"u", "v"}, {});
    auto report = validate(pk);
    CHECK(report.valid);
    CHECK(report.undeclared_contacts.size() == 1);

    pk = two_spheres({0, 0, 0}, 1.0, {9, 0, 0}, 2.0);
    pk.declared_graph = Graph({"u", "v"}, {{"u", "v"}});
    report = validate(pk);
    CHECK(report.missing_declared.size() == 1);
}

TEST_CASE("contact_graph on tangent spheres and circles") {
    auto pk = two_spheres({0, 0, 0}, 1.0, {2, 0, 0}, 1.0);
    Graph g = contact_graph(pk);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge("u", "v"));

    // Three mutually tangent unit circles at an equilateral triangle of side 2.
    Packing circles;
    circles.dimension = 2;
    circles.labels = {"a", "b", "c"};
    circles.centers = {{0, 0, 0}, {2, 0, 0}, {1, std::sqrt(3.0), 0}};
    circles.radii = {1, 1, 1};
    Graph k3 = contact_graph(circles);
    CHECK(k3.edge_count() == 3);

    auto bad = two_spheres({0, 0, 0}, 1.0, {2.5, 0, 0}, 2.0);
    CHECK_THROWS_AS(contact_graph(bad), ValidationError);
    try {
        contact_graph(bad);
    } catch (const ValidationError& e) {
        CHECK(e.report.overlaps().size() == 1);
    }
}

TEST_CASE("normalize_pose maps hubs onto the z-axis") {
    // Hubs at (5,0,0),(5,0,3), radii 1,2 (tangent): centers go to
    // (0,0,-1),(0,0,2).
    Packing pk = two_spheres({5, 0, 0}, 1.0, {5, 0, 3}, 2.0);
    Packing posed = normalize_pose(pk, "u", "v");
    CHECK(norm(posed.centers[0] - Vec3{0, 0, -1}) < 1e-12);
    CHECK(norm(posed.centers[1] - Vec3{0, 0, 2}) < 1e-12);

    // Already in pose: identity up to roundoff.
    Packing again = normalize_pose(posed, "u", "v");
    CHECK(norm(again.centers[0] - posed.centers[0]) < 1e-12);
    CHECK(norm(again.centers[1] - posed.centers[1]) < 1e-12);

    Packing coincident = two_spheres({1, 2, 3}, 1.0, {1, 2, 3}, 2.0);
    CHECK_THROWS_AS(normalize_pose(coincident, "u", "v"), std::invalid_argument);
}

TEST_CASE("normalize_pose preserves distances and pair classes") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Graph tree = Graph({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
        auto layout = heuristic_penny_layout(tree, rng.next_u64());
        REQUIRE(layout.ok);
        Packing pk = lift_packing(layout.realization, "ha", "hb");
        Packing posed = normalize_pose(pk, "ha", "hb");

        for (std::size_t i = 0; i < pk.size(); ++i)
            for (std::size_t j = i + 1; j < pk.size(); ++j) {
                double before = distance(pk.centers[i], pk.centers[j]);
                double after = distance(posed.centers[i], posed.centers[j]);
                CHECK(std::abs(before - after) <= 1e-12 * std::max(1.0, before));
            }

        auto a = validate(pk), b = validate(posed);
        for (std::size_t p = 0; p < a.pairs.size(); ++p) CHECK(a.pairs[p].cls == b.pairs[p].cls);
    }
}

TEST_CASE("packing JSON round trip is exact") {
    auto flower = oracle::flower();
    Packing pk = lift_packing(flower, "a", "b");
    Packing back = packing_from_json(to_json(pk));
    CHECK(back.dimension == pk.dimension);
    REQUIRE(back.size() == pk.size());
    for (std::size_t i = 0; i < pk.size(); ++i) {
        CHECK(back.labels[i] == pk.labels[i]);
        CHECK(back.radii[i] == pk.radii[i]);  // bitwise
        CHECK(back.centers[i].x == pk.centers[i].x);
        CHECK(back.centers[i].y == pk.centers[i].y);
        CHECK(back.centers[i].z == pk.centers[i].z);
    }
    REQUIRE(back.declared_graph.has_value());
    CHECK(*back.declared_graph == *pk.declared_graph);

    // 2-dimensional packings serialize two coordinates.
    Packing circles;
    circles.dimension = 2;
    circles.labels = {"a", "b"};
    circles.centers = {{0, 0, 0}, {2, 0, 0}};
    circles.radii = {1, 1};
    Packing c2 = packing_from_json(to_json(circles));
    CHECK(c2.dimension == 2);
    CHECK(c2.centers[1].x == 2.0);
    CHECK(c2.centers[1].z == 0.0);
}

TEST_SUITE_END();
