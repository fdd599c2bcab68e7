#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "packrigid/geometry.hpp"
#include "packrigid/graph.hpp"
#include "packrigid/packing.hpp"

namespace packrigid {

struct StressReport {
    std::size_t edge_count = 0;
    std::size_t dof = 0;  // d * |V|
    std::size_t rank = 0;
    std::size_t stress_dim = 0;  // edge_count - rank
    // Orthonormal basis of the left null space; one coefficient per edge in
    // sorted edge order. Sign/rotation of the basis is not canonical.
    std::vector<std::vector<double>> stress_basis;
    std::vector<double> singular_values;  // descending
    double sigma_min_ratio = 0.0;         // smallest / largest singular value
    std::vector<std::pair<std::string, std::string>> edge_order;
};

// |E| x d|V| matrix: the row of edge vw carries (p_v - p_w) in v's block and
// (p_w - p_v) in w's block; rows follow sorted edge order, columns follow the
// graph's vertex order. Placements use the first d coordinates of each Vec3.
Eigen::MatrixXd rigidity_matrix(const Graph& g, const std::vector<Vec3>& placement, int d);

StressReport stress_basis(const Graph& g, const std::vector<Vec3>& placement, int d,
                          double rank_tol = 1e-8);

struct StressFreeVerdict {
    bool stress_free = false;
    StressReport report;
};

StressFreeVerdict is_stress_free(const Packing& pk, const ToleranceProfile& tol = {});

struct ZeroExtensionStep {
    std::string vertex;
    std::vector<std::string> prior_neighbors;
};

// Failure is a value, not an exception: `ok` false names the violating
// vertex. Success certifies stress-freeness without a full decomposition.
struct ZeroExtensionCertificate {
    bool ok = false;
    std::vector<ZeroExtensionStep> steps;
    std::string failed_vertex;
    std::string reason;
};

ZeroExtensionCertificate zero_extension_certificate(const Packing& pk,
                                                    const std::vector<std::string>& order,
                                                    const ToleranceProfile& tol = {});

// True iff the points span a (count-1)-dimensional affine subspace; count
// must be between 1 and d+1.
bool affine_independent(const std::vector<Vec3>& points, int d, double rank_tol = 1e-8);

}  // namespace packrigid
