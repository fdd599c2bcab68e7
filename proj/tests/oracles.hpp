#pragma once

// Independent oracles for the test suites: plain row-reduction rank, vertex
// force balance recomputed from scratch, a minimal XML well-formedness
// check, and shared fixture builders. Nothing here calls the code paths it
// is used to verify.

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "packrigid/geometry.hpp"
#include "packrigid/graph.hpp"
#include "packrigid/planar_lift.hpp"
#include "packrigid/random.hpp"

namespace oracle {

// Rank by Gaussian elimination with partial pivoting.
inline std::size_t gauss_rank(std::vector<std::vector<double>> m, double tol = 1e-9) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
    double scale = 0.0;
    for (const auto& row : m)
        for (double x : row) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) <= tol * scale) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            double f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    return rows;
}

// Max vertex-balance residual of a stress vector, recomputed edge by edge
// (no matrices involved).
inline double balance_residual(const packrigid::Graph& g,
                               const std::vector<packrigid::Vec3>& placement,
                               const std::vector<double>& stress) {
    using packrigid::Vec3;
    std::map<std::string, Vec3> force;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) index[g.vertices()[i]] = i;
    std::size_t e = 0;
    for (const auto& [u, v] : g.edges()) {
        Vec3 pu = placement[index[u]], pv = placement[index[v]];
        force[u] = force[u] + (pu - pv) * stress[e];
        force[v] = force[v] + (pv - pu) * stress[e];
        ++e;
    }
    double worst = 0.0;
    for (const auto& [v, f] : force) worst = std::max(worst, packrigid::norm(f));
    return worst;
}

// Enough XML checking for our SVG output: declaration, balanced tags,
// quoted attribute values.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        std::size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        bool closing = tag[0] == '/';
        bool self_closing = tag.back() == '/';
        std::string body = tag.substr(closing ? 1 : 0);
        if (self_closing) body.pop_back();
        std::string name = body.substr(0, body.find_first_of(" \t\n"));
        if (name.empty()) return false;
        std::size_t quotes = 0;
        for (char c : body) quotes += c == '"';
        if (quotes % 2 != 0) return false;
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closing) {
            stack.push_back(name);
        }
    }
    return stack.empty();
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// The 7-penny hexagonal flower: a centre penny with six neighbours, 12
// contacts, the extremal 7-vertex penny graph.
inline packrigid::PennyRealization flower() {
    packrigid::PennyRealization r;
    const double pi = std::acos(-1.0);
    r.vertices.push_back("p0");
    r.positions.push_back({10.0, 0.0});
    for (int k = 0; k < 6; ++k) {
        r.vertices.push_back("p" + std::to_string(k + 1));
        r.positions.push_back({10.0 + 2.0 * std::cos(pi * k / 3.0), 2.0 * std::sin(pi * k / 3.0)});
    }
    return r;
}

inline packrigid::Mat3 random_rotation(packrigid::SplitMix64& rng) {
    packrigid::Vec3 axis{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (packrigid::norm(axis) < 1e-3) axis = {1, 0, 0};
    return packrigid::rotation_about_axis(axis, rng.uniform(0.0, 6.28));
}

}  // namespace oracle
