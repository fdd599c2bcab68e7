#include "packrigid/rigidity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace packrigid {

Eigen::MatrixXd rigidity_matrix(const Graph& g, const std::vector<Vec3>& placement, int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("rigidity_matrix: d must be 2 or 3");
    if (placement.size() != g.vertex_count())
        throw std::invalid_argument("rigidity_matrix: placement size mismatch");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) index[g.vertices()[i]] = i;

    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.edge_count()),
                                              static_cast<Eigen::Index>(d * g.vertex_count()));
    Eigen::Index row = 0;
    for (const auto& [u, v] : g.edges()) {
        std::size_t iu = index.at(u), iv = index.at(v);
        Vec3 diff = placement[iu] - placement[iv];
        bool coincident = true;
        for (int k = 0; k < d; ++k)
            if (diff[k] != 0.0) coincident = false;
        if (coincident)
            throw std::invalid_argument("rigidity_matrix: coincident endpoints on edge " + u +
                                        "-" + v);
        for (int k = 0; k < d; ++k) {
            R(row, static_cast<Eigen::Index>(d * iu + k)) = diff[k];
            R(row, static_cast<Eigen::Index>(d * iv + k)) = -diff[k];
        }
        ++row;
    }
    return R;
}

StressReport stress_basis(const Graph& g, const std::vector<Vec3>& placement, int d,
                          double rank_tol) {
    StressReport report;
    report.edge_count = g.edge_count();
    report.dof = static_cast<std::size_t>(d) * g.vertex_count();
    report.edge_order.assign(g.edges().begin(), g.edges().end());
    if (report.edge_count == 0) return report;

    Eigen::MatrixXd R = rigidity_matrix(g, placement, d);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();

    report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    report.sigma_min_ratio =
        sigma_max > 0.0 ? report.singular_values.back() / sigma_max : 0.0;

    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > rank_tol * sigma_max && sigma_max > 0.0) ++rank;
    report.rank = rank;
    report.stress_dim = report.edge_count - rank;

    // Left null space: trailing columns of U (the rows beyond the numerical
    // rank, plus any rows past the singular value count).
    const Eigen::MatrixXd& U = svd.matrixU();
    for (std::size_t c = rank; c < report.edge_count; ++c) {
        std::vector<double> vec(report.edge_count);
        for (std::size_t r = 0; r < report.edge_count; ++r)
            vec[r] = U(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        report.stress_basis.push_back(std::move(vec));
    }
    return report;
}

StressFreeVerdict is_stress_free(const Packing& pk, const ToleranceProfile& tol) {
    Graph g = contact_graph(pk, tol);
    StressReport report = stress_basis(g, pk.centers, pk.dimension, tol.rank_tol);
    return {report.stress_dim == 0, std::move(report)};
}

bool affine_independent(const std::vector<Vec3>& points, int d, double rank_tol) {
    if (d != 2 && d != 3) throw std::invalid_argument("affine_independent: d must be 2 or 3");
    const std::size_t count = points.size();
    if (count == 0) throw std::invalid_argument("affine_independent: no points");
    if (count > static_cast<std::size_t>(d) + 1)
        throw std::invalid_argument(
            "affine_independent: more than d+1 points can never be affinely independent");
    if (count == 1) return true;

    Vec3 mean{};
    for (const auto& p : points) mean = mean + p;
    mean = mean * (1.0 / static_cast<double>(count));

    Eigen::MatrixXd M(static_cast<Eigen::Index>(count), d);
    for (std::size_t i = 0; i < count; ++i) {
        Vec3 c = points[i] - mean;
        for (int k = 0; k < d; ++k) M(static_cast<Eigen::Index>(i), k) = c[k];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sigma = svd.singularValues();
    if (sigma(0) == 0.0) return false;
    // Need rank = count - 1; the centered matrix has rank at most count - 1.
    return sigma(static_cast<Eigen::Index>(count) - 2) > rank_tol * sigma(0);
}

ZeroExtensionCertificate zero_extension_certificate(const Packing& pk,
                                                    const std::vector<std::string>& order,
                                                    const ToleranceProfile& tol) {
    std::set<std::string> in_order(order.begin(), order.end());
    if (order.size() != pk.size() || in_order.size() != order.size())
        throw std::invalid_argument(
            "zero_extension_certificate: order must be a permutation of the packing's vertices");
    for (const auto& v : pk.labels)
        if (!in_order.count(v))
            throw std::invalid_argument("zero_extension_certificate: order is missing vertex '" +
                                        v + "'");

    Graph g = contact_graph(pk, tol);
    const int d = pk.dimension;

    ZeroExtensionCertificate cert;
    std::set<std::string> placed;
    for (const auto& v : order) {
        ZeroExtensionStep step;
        step.vertex = v;
        for (const auto& w : g.neighbors(v))
            if (placed.count(w)) step.prior_neighbors.push_back(w);

        if (step.prior_neighbors.size() > static_cast<std::size_t>(d)) {
            cert.ok = false;
            cert.failed_vertex = v;
            cert.reason = "vertex has " + std::to_string(step.prior_neighbors.size()) +
                          " earlier neighbors, more than the dimension " + std::to_string(d);
            return cert;
        }
        std::vector<Vec3> pts{pk.centers[pk.index_of(v)]};
        for (const auto& w : step.prior_neighbors) pts.push_back(pk.centers[pk.index_of(w)]);
        if (!affine_independent(pts, d, tol.rank_tol)) {
            cert.ok = false;
            cert.failed_vertex = v;
            cert.reason = "vertex and its earlier neighbors are affinely dependent";
            return cert;
        }
        cert.steps.push_back(std::move(step));
        placed.insert(v);
    }
    cert.ok = true;
    return cert;
}

}  // namespace packrigid
