#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "packrigid/montecarlo.hpp"
#include "packrigid/planar_lift.hpp"
#include "packrigid/rigidity.hpp"

using namespace packrigid;

TEST_SUITE_BEGIN("planar_lift");

TEST_CASE("circle_circle_intersect") {
    // Externally tangent: one solution.
    auto pts = circle_circle_intersect(1.0, 2.0, 0.0, 1.0);
    REQUIRE(pts.size() == 1);
    CHECK(norm(pts[0] - Vec2{1, 0}) < 1e-14);

    // Symmetric tangency through the quadratic.
    pts = circle_circle_intersect(4.0, 4.0, 0.0, 4.0);
    REQUIRE(pts.size() == 1);
    CHECK(norm(pts[0] - Vec2{2, 0}) < 1e-14);

    // Two crossings, sorted by y.
    pts = circle_circle_intersect(25.0, 8.0, 0.0, 25.0);
    REQUIRE(pts.size() == 2);
    CHECK(norm(pts[0] - Vec2{4, -3}) < 1e-12);
    CHECK(norm(pts[1] - Vec2{4, 3}) < 1e-12);

    // A genuinely two-dimensional offset.
    pts = circle_circle_intersect(4.0, 1.0, 1.0, 2.0);
    for (const auto& p : pts) {
        CHECK(p.x * p.x + p.y * p.y == doctest::Approx(4.0).epsilon(1e-12));
        CHECK((p.x - 1) * (p.x - 1) + (p.y - 1) * (p.y - 1) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }

    CHECK(circle_circle_intersect(1.0, 10.0, 0.0, 1.0).empty());  // far apart
    CHECK_THROWS_AS(circle_circle_intersect(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(circle_circle_intersect(-1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("penny_to_sphere tangency oracle") {
    Sphere s = penny_to_sphere({2, 0});
    CHECK(s.radius == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(norm(s.center - Vec3{4.0 / 3, 0, 0}) < 1e-15);
    // sqrt(16/9 + 1) = 5/3 = rho + 1: tangent to both hubs.
    for (double hub_z : {-1.0, 1.0})
        CHECK(distance(s.center, {0, 0, hub_z}) ==
              doctest::Approx(s.radius + 1.0).epsilon(1e-15));

    // Radius decreases monotonically to zero as the penny recedes.
    double prev = penny_to_sphere({1.5, 0}).radius;
    for (double x = 2.0; x < 40.0; x *= 1.5) {
        double rho = penny_to_sphere({x, 0}).radius;
        CHECK(rho < prev);
        prev = rho;
    }
    CHECK(prev < 1e-2);

    CHECK_THROWS_AS(penny_to_sphere({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(penny_to_sphere({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("sphere_to_penny inverts the lift") {
    Vec2 q = sphere_to_penny({4.0 / 3, 0, 0}, 2.0 / 3);
    CHECK(norm(q - Vec2{2, 0}) < 1e-12);

    // rho = sqrt(2) - 1 puts the penny at norm sqrt(2) + 1.
    double rho = std::sqrt(2.0) - 1.0;
    q = sphere_to_penny({1, 0, 0}, rho);
    CHECK(norm(q) == doctest::Approx(std::sqrt(2.0) + 1.0).epsilon(1e-12));

    CHECK_THROWS_AS(sphere_to_penny({5, 0, 0}, 1.0), std::invalid_argument);

    SplitMix64 rng(64);
    for (int trial = 0; trial < 100; ++trial) {
        double angle = rng.uniform(0, 6.28), d = rng.uniform(1.01, 30.0);
        Vec2 penny{d * std::cos(angle), d * std::sin(angle)};
        Sphere s = penny_to_sphere(penny);
        Vec2 back = sphere_to_penny(s.center, s.radius);
        CHECK(norm(back - penny) < 1e-12 * (1.0 + norm(penny)));
    }
}

TEST_CASE("lift_packing: empty, single penny, flower") {
    PennyRealization empty;
    Packing two = lift_packing(empty, "a", "b");
    CHECK(two.size() == 2);
    Graph k2 = contact_graph(two);
    CHECK(k2.edge_count() == 1);

    PennyRealization one;
    one.vertices = {"p"};
    one.positions = {{2, 0}};
    Packing three = lift_packing(one, "a", "b");
    Graph k3 = contact_graph(three);
    CHECK(k3.edge_count() == 3);
    for (const auto& pr : validate(three).pairs)
        CHECK(std::abs(pr.gap) < 1e-12);  // all pairwise tangent

    Packing nine = lift_packing(oracle::flower(), "a", "b");
    CHECK(nine.size() == 9);
    Graph flower_graph = contact_graph(nine);
    CHECK(static_cast<long long>(flower_graph.edge_count()) == sphere_contact_bound(7));
    CHECK(flower_graph == *nine.declared_graph);

    CHECK_THROWS_AS(lift_packing(one, "p", "b"), std::invalid_argument);
}

TEST_CASE("lift contact graph equals the penny join, property") {
    SplitMix64 rng(2222);
    for (int trial = 0; trial < 15; ++trial) {
        Graph tree = random_labeled_tree(2 + static_cast<int>(rng.next_below(7)), rng);
        auto layout = heuristic_penny_layout(tree, rng.next_u64());
        if (!layout.ok) continue;
        Graph pg = penny_contact_graph(layout.realization);
        CHECK(pg == tree);
        Packing pk = lift_packing(layout.realization, "hub_a", "hub_b");
        CHECK(contact_graph(pk) == join_k2(pg, "hub_a", "hub_b"));
    }
}

TEST_CASE("build_chain frozen examples") {
    // r = (1,1,1): defect = 4 sqrt(6)/3 - 2, from the chord over twice the
    // step angle acos(1/3) at norm sqrt(3).
    ChainResult c = build_chain({1, 1, 1});
    CHECK(c.closure_defect == doctest::Approx(4.0 * std::sqrt(6.0) / 3.0 - 2.0).epsilon(1e-14));
    CHECK(c.closure_defect == doctest::Approx(1.2659863237109046).epsilon(1e-12));

    // r = (1,2): p2 = (1/sqrt(3), -sqrt(23/3)), consecutive distance exactly 3.
    c = build_chain({1, 2});
    CHECK(norm(c.positions[0] - Vec2{std::sqrt(3.0), 0}) < 1e-15);
    CHECK(norm(c.positions[1] - Vec2{1.0 / std::sqrt(3.0), -std::sqrt(23.0 / 3.0)}) < 1e-12);
    CHECK(distance(c.positions[0], c.positions[1]) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(c.closure_defect == doctest::Approx(0.0));  // k = 2 tangency is built in

    CHECK_THROWS_AS(build_chain({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_chain({1.0, -1.0}), std::invalid_argument);
    // Triangle inequality violation: a tiny circle cannot reach a unit one.
    CHECK_THROWS_WITH_AS(build_chain({1.0, 0.05}), doctest::Contains("triangle"),
                         std::invalid_argument);
}

TEST_CASE("build_chain invariants on random radii") {
    SplitMix64 rng(616);
    int built = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int k = 2 + static_cast<int>(rng.next_below(5));
        std::vector<double> radii;
        for (int i = 0; i < k; ++i)
            radii.push_back(std::exp(rng.uniform(std::log(0.1), std::log(10.0))));
        ChainResult chain;
        try {
            chain = build_chain(radii);
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++built;
        CHECK(chain.positions[0].y == 0.0);
        CHECK(chain.positions[0].x > 0.0);
        for (std::size_t i = 0; i < chain.positions.size(); ++i) {
            const Vec2& p = chain.positions[i];
            double want = radii[i] * radii[i] + 2 * radii[i];
            CHECK(std::abs(dot(p, p) - want) < 1e-10 * want);
            if (i > 0) {
                double dist = distance(chain.positions[i - 1], p);
                double s = radii[i - 1] + radii[i];
                CHECK(std::abs(dist - s) < 1e-10 * s);
                // Strictly clockwise steps.
                double cross = chain.positions[i - 1].x * p.y - chain.positions[i - 1].y * p.x;
                CHECK(cross < 0.0);
            }
        }
        // Deterministic reconstruction is bit-for-bit.
        ChainResult again = build_chain(radii);
        for (std::size_t i = 0; i < chain.positions.size(); ++i) {
            CHECK(again.positions[i].x == chain.positions[i].x);
            CHECK(again.positions[i].y == chain.positions[i].y);
        }
    }
    CHECK(built > 50);
}

TEST_CASE("close_chain_solve finds the equilateral K5 closure") {
    // Three mutually tangent radius-6 circles around the hubs close the
    // 3-chain: the closing radius is exactly 6 (Soddy/Descartes oracle in
    // the acceptance suite pins the same value).
    auto roots = close_chain_solve({6.0, 6.0}, 0.3, 10.0);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(6.0).epsilon(1e-12));
    std::vector<double> full{6.0, 6.0, roots[0]};
    CHECK(std::abs(build_chain(full).closure_defect) < 1e-12);

    // Unit-radius prefixes cannot close a 3-chain clockwise: the wrap angle
    // tops out near 160 degrees. The solver correctly reports no roots.
    CHECK(close_chain_solve({1.0, 1.0}, 0.2, 10.0).empty());

    // Bracket endpoints must satisfy the triangle inequalities.
    CHECK_THROWS_AS(close_chain_solve({1.0, 1.0}, 0.01, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(close_chain_solve({1.0}, 0.2, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(close_chain_solve({1.0, 1.0}, 5.0, 2.0), std::invalid_argument);
}

TEST_CASE("close_chain_solve roots rebuild below 1e-10 for longer chains") {
    for (int k = 4; k <= 6; ++k) {
        std::vector<double> prefix;
        double lo = 0.2;
        if (k == 4) {
            prefix = {6.0, 5.0, 7.0};
            lo = 0.35;  // a radius-0.2 circle cannot reach the radius-7 one
        } else {
            prefix.assign(k - 1, 1.0);
        }
        auto roots = close_chain_solve(prefix, lo, 10.0);
        REQUIRE(!roots.empty());
        for (double r : roots) {
            std::vector<double> full = prefix;
            full.push_back(r);
            CHECK(std::abs(build_chain(full).closure_defect) < 1e-10);
        }
    }
}

TEST_CASE("realize_tree_with_radii") {
    // Single vertex: on the positive x-axis at its prescribed norm.
    Graph single({"v"}, {});
    auto res = realize_tree_with_radii(single, {{"v", 0.5}});
    REQUIRE(res.ok);
    CHECK(norm(res.realization.positions[0] -
               Vec2{std::sqrt(1.0 + 2.0 / 0.5), 0}) < 1e-14);

    // Edge with rho = 2/3 on both: norms 2, separation angle 60 degrees.
    Graph edge({"u", "v"}, {{"u", "v"}});
    res = realize_tree_with_radii(edge, {{"u", 2.0 / 3}, {"v", 2.0 / 3}});
    REQUIRE(res.ok);
    Vec2 qu = res.realization.positions[res.realization.index_of("u")];
    Vec2 qv = res.realization.positions[res.realization.index_of("v")];
    CHECK(norm(qu) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(norm(qv) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(distance(qu, qv) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(dot(qu, qv) / (norm(qu) * norm(qv)) == doctest::Approx(0.5).epsilon(1e-12));

    // Huge prescribed radii pin both norms onto the forbidden-disk margin:
    // a failure value, not an exception.
    res = realize_tree_with_radii(edge, {{"u", 1e10}, {"v", 1e10}});
    CHECK_FALSE(res.ok);
    CHECK(!res.failure.empty());

    Graph tri({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    CHECK_THROWS_AS(realize_tree_with_radii(tri, {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}),
                    std::invalid_argument);

    // Round trip: radii of the lifted realization match the prescription.
    Graph path3({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    std::map<std::string, double> want{{"x", 0.3}, {"y", 1.7}, {"z", 0.8}};
    res = realize_tree_with_radii(path3, want);
    REQUIRE(res.ok);
    for (const auto& [v, rho] : want) {
        Sphere s = penny_to_sphere(res.realization.positions[res.realization.index_of(v)]);
        CHECK(s.radius == doctest::Approx(rho).epsilon(1e-12));
    }
    CHECK(penny_contact_graph(res.realization) == path3);
}

TEST_CASE("heuristic_penny_layout basics") {
    // Paths succeed for every seed.
    Graph p5({"a", "b", "c", "d", "e"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto res = heuristic_penny_layout(p5, seed);
        REQUIRE(res.ok);
        CHECK(penny_contact_graph(res.realization) == p5);
    }

    // K_{1,5} is realizable, K_{1,6} never is.
    std::vector<std::string> verts{"c"};
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 5; ++i) {
        verts.push_back("l" + std::to_string(i));
        edges.emplace_back("c", verts.back());
    }
    CHECK(heuristic_penny_layout(Graph(verts, edges), 1).ok);

    verts.push_back("l5");
    edges.emplace_back("c", "l5");
    auto k16 = heuristic_penny_layout(Graph(verts, edges), 1);
    CHECK_FALSE(k16.ok);
    CHECK(!k16.failure.empty());

    Graph tri({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    CHECK_THROWS_AS(heuristic_penny_layout(tri, 0), std::invalid_argument);

    // Forests with several components.
    Graph forest({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    auto res = heuristic_penny_layout(forest, 5);
    REQUIRE(res.ok);
    CHECK(penny_contact_graph(res.realization) == forest);
}

TEST_CASE("accepted caterpillars are laid out successfully") {
    // Random caterpillars passing caterpillar_penny_check, up to 12 vertices.
    SplitMix64 rng(808);
    int tested = 0;
    while (tested < 12) {
        int spine_len = 1 + static_cast<int>(rng.next_below(4));
        std::vector<std::string> verts;
        std::vector<std::pair<std::string, std::string>> edges;
        for (int i = 0; i < spine_len; ++i) {
            verts.push_back("s" + std::to_string(i));
            if (i > 0) edges.emplace_back(verts[i - 1], verts[i]);
        }
        for (int i = 0; i < spine_len && verts.size() < 12; ++i) {
            int leaves = static_cast<int>(rng.next_below(4));
            for (int l = 0; l < leaves && verts.size() < 12; ++l) {
                std::string leaf = "s" + std::to_string(i) + "l" + std::to_string(l);
                verts.push_back(leaf);
                edges.emplace_back("s" + std::to_string(i), leaf);
            }
        }
        Graph cat(verts, edges);
        if (!caterpillar_penny_check(cat)) continue;
        ++tested;
        bool ok = false;
        for (std::uint64_t seed = 0; seed < 3 && !ok; ++seed)
            ok = heuristic_penny_layout(cat, seed).ok;
        CHECK(ok);
    }
}

TEST_SUITE_END();
