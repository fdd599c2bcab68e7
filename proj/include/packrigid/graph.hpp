#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace packrigid {

// Finite simple graph over string vertex labels. Graphs are immutable
// values: every operation that "changes" a graph returns a new one.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<std::string> vertices,
          const std::vector<std::pair<std::string, std::string>>& edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_vertex(const std::string& v) const { return adjacency_.count(v) > 0; }
    bool has_edge(const std::string& u, const std::string& v) const;
    // Sorted by label.
    const std::vector<std::string>& neighbors(const std::string& v) const;
    std::size_t degree(const std::string& v) const { return neighbors(v).size(); }

    bool operator==(const Graph& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_;
    }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    std::vector<std::string> vertices_;
    std::set<std::pair<std::string, std::string>> edges_;  // endpoints sorted
    std::map<std::string, std::vector<std::string>> adjacency_;
};

struct ForestCheck {
    bool is_forest = false;
    std::vector<std::string> cycle;  // one witness cycle when not a forest
};

struct ChordalCheck {
    bool is_chordal = false;
    std::vector<std::string> elimination_order;  // perfect elimination ordering when chordal
};

// G (+) K2: adds fresh hub vertices a,b, the edge ab and edges to every
// vertex of g. Throws std::invalid_argument naming any clashing label.
Graph join_k2(const Graph& g, const std::string& hub_a, const std::string& hub_b);

ForestCheck is_forest(const Graph& g);
ChordalCheck is_chordal(const Graph& g);

// For a caterpillar tree: true iff max degree <= 5 and every path between
// two degree-5 vertices contains a vertex of degree <= 3. Throws
// std::invalid_argument describing the offending structure when the input
// is not a caterpillar tree.
bool caterpillar_penny_check(const Graph& g);

std::size_t component_count(const Graph& g);

// d*n - d(d+1)/2, requires n >= d.
long long maxwell_bound(int d, long long n);

// floor(3n - sqrt(12n-3)) and floor(5n + 1 - sqrt(12n-3)), evaluated with
// integer square roots so perfect squares (12n-3 = 81, ...) stay exact.
long long penny_edge_bound(long long n);
long long sphere_contact_bound(long long n);

}  // namespace packrigid
