#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "packrigid/graph.hpp"
#include "packrigid/packing.hpp"
#include "packrigid/random.hpp"

namespace packrigid {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Seeded experiment parameters; log-uniform radii stand in for "generic"
// radii, which have no floating-point counterpart.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    int trials = 100;
    int tree_size_min = 2;
    int tree_size_max = 8;
    double radii_lo = 0.1;
    double radii_hi = 10.0;
    ToleranceProfile tolerance;

    void check() const;
};

// Uniform random labeled tree on n vertices v0..v{n-1} via a uniform
// Pruefer sequence.
Graph random_labeled_tree(int n, SplitMix64& rng);

// Hubs first, then the tree vertices in reverse leaf-removal order: every
// vertex arrives after its parent, so each step adds at most 3 earlier
// neighbors in G (+) K2.
std::vector<std::string> zero_extension_order(const Graph& tree, const std::string& hub_a,
                                              const std::string& hub_b);

struct StressTrialRecord {
    std::uint64_t index = 0;
    int tree_size = 0;
    std::vector<std::pair<std::string, std::string>> tree_edges;
    bool layout_ok = false;
    std::string layout_failure;
    bool stress_free = false;
    bool certificate_ok = false;
    bool certificate_agrees = true;  // never: certificate ok but stresses exist
    std::size_t edge_count = 0;
    std::size_t stress_dim = 0;
    double sigma_min_ratio = 0.0;     // over all singular values
    double sigma_rank_gap = 0.0;      // smallest above-cut / largest
};

struct StressExperimentReport {
    ExperimentConfig config;
    std::vector<StressTrialRecord> records;
    int layouts_ok = 0;
    int stress_free_count = 0;
    int certificates_ok = 0;
    int disagreements = 0;
};

StressExperimentReport montecarlo_stressfree(const ExperimentConfig& cfg);

struct ChainTrialRecord {
    std::uint64_t index = 0;
    int k = 0;
    std::vector<double> radii;
    bool built = false;
    std::string failure;
    double abs_defect = 0.0;
};

struct ClosureRecord {
    int k = 0;
    std::vector<double> prefix;
    std::vector<double> roots;
    std::vector<double> rebuilt_defects;
};

struct ChainExperimentReport {
    ExperimentConfig config;
    int k_min = 3;
    int k_max = 6;
    std::vector<ChainTrialRecord> records;
    int built_count = 0;
    double min_abs_defect = 0.0;  // over built trials
    // For each k, the first seeded prefix whose closure solve found roots,
    // with every root rebuilt and its defect re-measured.
    std::vector<ClosureRecord> closures;
};

ChainExperimentReport montecarlo_chain(const ExperimentConfig& cfg, int k_min, int k_max);

}  // namespace packrigid
