#include "packrigid/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "packrigid/planar_lift.hpp"
#include "packrigid/rigidity.hpp"

namespace packrigid {

void ExperimentConfig::check() const {
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if (tree_size_min < 1 || tree_size_max < tree_size_min)
        throw std::invalid_argument("ExperimentConfig: tree size range must be ordered and >= 1");
    if (!(radii_lo > 0.0) || !(radii_hi >= radii_lo))
        throw std::invalid_argument("ExperimentConfig: radii bounds must be positive and ordered");
    tolerance.check();
}

Graph random_labeled_tree(int n, SplitMix64& rng) {
    if (n < 1) throw std::invalid_argument("random_labeled_tree: n must be >= 1");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    if (n == 1) return Graph(labels, {});
    if (n == 2) return Graph(labels, {{labels[0], labels[1]}});

    std::vector<int> pruefer(n - 2);
    for (auto& x : pruefer) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));

    std::vector<int> degree(n, 1);
    for (int x : pruefer) ++degree[x];
    std::set<int> leaves;
    for (int i = 0; i < n; ++i)
        if (degree[i] == 1) leaves.insert(i);

    std::vector<std::pair<std::string, std::string>> edges;
    for (int x : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(labels[leaf], labels[x]);
        if (--degree[x] == 1) leaves.insert(x);
    }
    int u = *leaves.begin();
    int v = *std::next(leaves.begin());
    edges.emplace_back(labels[u], labels[v]);
    return Graph(labels, edges);
}

std::vector<std::string> zero_extension_order(const Graph& tree, const std::string& hub_a,
                                              const std::string& hub_b) {
    auto forest = is_forest(tree);
    if (!forest.is_forest)
        throw std::invalid_argument("zero_extension_order: input graph is not a forest");

    std::map<std::string, std::size_t> remaining_degree;
    for (const auto& v : tree.vertices()) remaining_degree[v] = tree.degree(v);
    std::set<std::string> removed;
    std::vector<std::string> removal;
    // Peel current leaves (degree <= 1), smallest label first.
    while (removal.size() < tree.vertex_count()) {
        std::string pick;
        for (const auto& [v, deg] : remaining_degree)
            if (!removed.count(v) && deg <= 1) {
                pick = v;
                break;
            }
        removal.push_back(pick);
        removed.insert(pick);
        for (const auto& w : tree.neighbors(pick))
            if (!removed.count(w)) --remaining_degree[w];
    }

    std::vector<std::string> order{hub_a, hub_b};
    order.insert(order.end(), removal.rbegin(), removal.rend());
    return order;
}

namespace {

double smallest_above_cut(const StressReport& report) {
    if (report.rank == 0 || report.singular_values.empty()) return 0.0;
    double sigma_max = report.singular_values.front();
    return sigma_max > 0.0 ? report.singular_values[report.rank - 1] / sigma_max : 0.0;
}

}  // namespace

StressExperimentReport montecarlo_stressfree(const ExperimentConfig& cfg) {
    cfg.check();
    StressExperimentReport report;
    report.config = cfg;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(trial));
        StressTrialRecord rec;
        rec.index = static_cast<std::uint64_t>(trial);
        int n = cfg.tree_size_min +
                static_cast<int>(rng.next_below(
                    static_cast<std::uint64_t>(cfg.tree_size_max - cfg.tree_size_min + 1)));
        rec.tree_size = n;
        Graph tree = random_labeled_tree(n, rng);
        rec.tree_edges.assign(tree.edges().begin(), tree.edges().end());

        LayoutResult layout = heuristic_penny_layout(tree, rng.next_u64());
        rec.layout_ok = layout.ok;
        if (!layout.ok) {
            rec.layout_failure = layout.failure;
            report.records.push_back(std::move(rec));
            continue;
        }
        ++report.layouts_ok;

        Packing pk = lift_packing(layout.realization, "a", "b", cfg.tolerance);
        StressFreeVerdict verdict = is_stress_free(pk, cfg.tolerance);
        rec.stress_free = verdict.stress_free;
        rec.edge_count = verdict.report.edge_count;
        rec.stress_dim = verdict.report.stress_dim;
        rec.sigma_min_ratio = verdict.report.sigma_min_ratio;
        rec.sigma_rank_gap = smallest_above_cut(verdict.report);
        if (verdict.stress_free) ++report.stress_free_count;

        ZeroExtensionCertificate cert =
            zero_extension_certificate(pk, zero_extension_order(tree, "a", "b"), cfg.tolerance);
        rec.certificate_ok = cert.ok;
        if (cert.ok) ++report.certificates_ok;
        rec.certificate_agrees = !(cert.ok && !verdict.stress_free);
        if (!rec.certificate_agrees) ++report.disagreements;

        report.records.push_back(std::move(rec));
    }
    return report;
}

ChainExperimentReport montecarlo_chain(const ExperimentConfig& cfg, int k_min, int k_max) {
    cfg.check();
    if (k_min < 3 || k_max < k_min)
        throw std::invalid_argument("montecarlo_chain: need 3 <= k_min <= k_max");

    ChainExperimentReport report;
    report.config = cfg;
    report.k_min = k_min;
    report.k_max = k_max;
    report.min_abs_defect = std::numeric_limits<double>::infinity();

    auto log_uniform = [&](SplitMix64& rng) {
        return std::exp(rng.uniform(std::log(cfg.radii_lo), std::log(cfg.radii_hi)));
    };

    for (int trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(trial));
        ChainTrialRecord rec;
        rec.index = static_cast<std::uint64_t>(trial);
        rec.k = k_min + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k_max - k_min + 1)));
        for (int i = 0; i < rec.k; ++i) rec.radii.push_back(log_uniform(rng));
        try {
            ChainResult chain = build_chain(rec.radii);
            rec.built = true;
            rec.abs_defect = std::abs(chain.closure_defect);
            ++report.built_count;
            report.min_abs_defect = std::min(report.min_abs_defect, rec.abs_defect);
        } catch (const std::invalid_argument& e) {
            rec.failure = e.what();
        }
        report.records.push_back(std::move(rec));
    }
    if (report.built_count == 0) report.min_abs_defect = 0.0;

    // Re-inject solved closures: first seeded prefix per k whose bracket scan
    // finds a closing radius. The solver rejects infeasible bracket endpoints,
    // so clip the radii range to the feasible closing-radius interval first.
    auto feasible_against = [](double last_r, double x) {
        double last_d = std::sqrt(last_r * (last_r + 2.0));
        double d = std::sqrt(x * (x + 2.0));
        double s = last_r + x;
        return (last_d + d > s) && (s + last_d > d) && (s + d > last_d);
    };
    for (int k = k_min; k <= k_max; ++k) {
        ClosureRecord closure;
        closure.k = k;
        for (std::uint64_t attempt = 0; attempt < 400 && closure.roots.empty(); ++attempt) {
            SplitMix64 rng = derive_stream(cfg.seed, (1ull << 32) + 1000ull * k + attempt);
            std::vector<double> prefix;
            for (int i = 0; i + 1 < k; ++i) prefix.push_back(log_uniform(rng));
            double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
            constexpr int kProbe = 1024;
            for (int g = 0; g <= kProbe; ++g) {
                double x = cfg.radii_lo + (cfg.radii_hi - cfg.radii_lo) * g / kProbe;
                if (!feasible_against(prefix.back(), x)) continue;
                if (std::isnan(lo)) lo = x;
                hi = x;
            }
            if (std::isnan(lo) || !(hi > lo)) continue;
            try {
                std::vector<double> roots = close_chain_solve(prefix, lo, hi);
                if (roots.empty()) continue;
                closure.prefix = prefix;
                closure.roots = roots;
                for (double r : roots) {
                    std::vector<double> full = prefix;
                    full.push_back(r);
                    closure.rebuilt_defects.push_back(
                        std::abs(build_chain(full).closure_defect));
                }
            } catch (const std::invalid_argument&) {
                continue;
            }
        }
        report.closures.push_back(std::move(closure));
    }
    return report;
}

}  // namespace packrigid
