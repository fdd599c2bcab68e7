#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "packrigid/geometry.hpp"
#include "packrigid/graph.hpp"
#include "packrigid/packing.hpp"

namespace packrigid {

// Planar positions for unit circles (contact at centre distance 2), all
// strictly outside the closed unit disk around the origin. This is the
// equatorial picture of spheres tangent to the two standard hub spheres:
// tangency upstairs is centre distance exactly 2 down here, whatever the
// sphere radii.
struct PennyRealization {
    std::vector<std::string> vertices;
    std::vector<Vec2> positions;
    static constexpr double contact_distance = 2.0;

    std::size_t size() const { return vertices.size(); }
    std::size_t index_of(const std::string& label) const;
};

// Throws std::invalid_argument when a penny sits inside the forbidden disk
// or two pennies overlap.
void check_penny(const PennyRealization& r, const ToleranceProfile& tol = {});

Graph penny_contact_graph(const PennyRealization& r, const ToleranceProfile& tol = {});

// All real solutions of x^2+y^2 = p and (x-alpha)^2+(y-beta)^2 = q, sorted
// by y then x. Throws on non-positive p/q or concentric circles.
std::vector<Vec2> circle_circle_intersect(double p, double alpha, double beta, double q);

struct Sphere {
    Vec3 center{};
    double radius = 0.0;
};

// q outside the unit disk -> the unique sphere tangent to both unit hub
// spheres at (0,0,+-1): radius rho = 2/(||q||^2 - 1), centre (rho q, 0).
// This is the only radius map satisfying ||centre - (0,0,+-1)|| = rho + 1;
// see README for the derivation and the tangency oracle in the tests.
Sphere penny_to_sphere(const Vec2& q);

// Inverse of penny_to_sphere; checks the hub tangency and z = 0 to 1e-9.
Vec2 sphere_to_penny(const Vec3& center, double radius);

// Hubs of radius 1 at (0,0,-1) and (0,0,+1) plus one sphere per penny; the
// declared contact graph is (penny contact graph) (+) K2.
Packing lift_packing(const PennyRealization& r, const std::string& hub_a,
                     const std::string& hub_b, const ToleranceProfile& tol = {});

// Tangent-circle chain in the equatorial plane: circle i at distance
// d_i = sqrt(r_i^2 + 2 r_i) from the origin, consecutive circles tangent,
// winding strictly clockwise from (d_1, 0).
struct ChainResult {
    std::vector<Vec2> positions;
    std::vector<double> radii;
    double closure_defect = 0.0;  // ||p_1 - p_k|| - (r_1 + r_k)
};

ChainResult build_chain(const std::vector<double>& radii);

// Scans defect(r_k) over the bracket on a 256-cell grid, bisects every sign
// change, and returns the deduplicated closing radii (possibly none).
std::vector<double> close_chain_solve(const std::vector<double>& prefix_radii, double bracket_lo,
                                      double bracket_hi);

// Chain circles as spheres (centres on z = 0) plus the two unit hubs.
Packing chain_to_packing(const ChainResult& chain, const std::string& hub_a,
                         const std::string& hub_b);

struct TreeRealizeResult {
    bool ok = false;
    PennyRealization realization;
    std::string failure;
};

// Places a forest with prescribed sphere radii: vertex v gets norm
// sqrt(1 + 2/rho_v), children solved against their parent's distance-2
// circle with backtracking over the two intersection branches (upper
// first). Failure is a value naming the exhaustion point.
TreeRealizeResult realize_tree_with_radii(const Graph& tree,
                                          const std::map<std::string, double>& sphere_radii);

struct LayoutResult {
    bool ok = false;
    PennyRealization realization;
    std::string failure;
};

// Seeded randomized layout of a forest as unit pennies: components spread
// along the x-axis, depth-first angular fanning with jitter, bounded
// retries. The result's contact graph always equals the input forest.
LayoutResult heuristic_penny_layout(const Graph& tree, std::uint64_t seed);

}  // namespace packrigid
