#include "packrigid/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace packrigid {

namespace {

std::pair<std::string, std::string> sorted_edge(const std::string& u, const std::string& v) {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices,
             const std::vector<std::pair<std::string, std::string>>& edges)
    : vertices_(std::move(vertices)) {
    for (const auto& v : vertices_) {
        if (adjacency_.count(v))
            throw std::invalid_argument("Graph: duplicate vertex label '" + v + "'");
        adjacency_[v] = {};
    }
    for (const auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("Graph: self-loop at '" + u + "'");
        if (!adjacency_.count(u))
            throw std::invalid_argument("Graph: edge endpoint '" + u + "' is not a vertex");
        if (!adjacency_.count(v))
            throw std::invalid_argument("Graph: edge endpoint '" + v + "' is not a vertex");
        if (edges_.insert(sorted_edge(u, v)).second) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
    }
    for (auto& [label, nbrs] : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(const std::string& u, const std::string& v) const {
    return edges_.count(sorted_edge(u, v)) > 0;
}

const std::vector<std::string>& Graph::neighbors(const std::string& v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end())
        throw std::invalid_argument("Graph: unknown vertex '" + v + "'");
    return it->second;
}

Graph join_k2(const Graph& g, const std::string& hub_a, const std::string& hub_b) {
    if (hub_a == hub_b)
        throw std::invalid_argument("join_k2: hub labels coincide ('" + hub_a + "')");
    for (const auto& hub : {hub_a, hub_b})
        if (g.has_vertex(hub))
            throw std::invalid_argument("join_k2: hub label '" + hub + "' already in graph");

    std::vector<std::string> vertices = g.vertices();
    vertices.push_back(hub_a);
    vertices.push_back(hub_b);
    std::vector<std::pair<std::string, std::string>> edges(g.edges().begin(), g.edges().end());
    edges.emplace_back(hub_a, hub_b);
    for (const auto& v : g.vertices()) {
        edges.emplace_back(hub_a, v);
        edges.emplace_back(hub_b, v);
    }
    return Graph(vertices, edges);
}

ForestCheck is_forest(const Graph& g) {
    // Iterative DFS over sorted roots/neighbors so the witness is reproducible.
    std::map<std::string, std::string> parent;
    std::set<std::string> visited;
    std::vector<std::string> roots = g.vertices();
    std::sort(roots.begin(), roots.end());

    for (const auto& root : roots) {
        if (visited.count(root)) continue;
        std::vector<std::pair<std::string, std::string>> stack{{root, ""}};
        while (!stack.empty()) {
            auto [v, from] = stack.back();
            stack.pop_back();
            if (visited.count(v)) continue;
            visited.insert(v);
            parent[v] = from;
            const auto& nbrs = g.neighbors(v);
            for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
                const std::string& w = *it;
                if (w == from) continue;
                if (visited.count(w)) {
                    // Non-tree edge v-w closes a cycle through the DFS tree: join the
                    // ancestor chains of v and w at their lowest common vertex.
                    auto chain_of = [&](std::string cur) {
                        std::vector<std::string> chain{cur};
                        while (!parent.at(cur).empty()) {
                            cur = parent.at(cur);
                            chain.push_back(cur);
                        }
                        return chain;
                    };
                    std::vector<std::string> vc = chain_of(v), wc = chain_of(w);
                    std::set<std::string> on_vc(vc.begin(), vc.end());
                    std::size_t meet = 0;
                    while (meet < wc.size() && !on_vc.count(wc[meet])) ++meet;
                    // v -> ... -> LCA -> ... -> w, closed by the non-tree edge w-v.
                    std::vector<std::string> cycle;
                    for (const auto& u : vc) {
                        cycle.push_back(u);
                        if (u == wc[meet]) break;
                    }
                    for (std::size_t i = meet; i-- > 0;) cycle.push_back(wc[i]);
                    return {false, cycle};
                }
                stack.emplace_back(w, v);
            }
        }
    }
    return {true, {}};
}

ChordalCheck is_chordal(const Graph& g) {
    // Maximum cardinality search, ties broken by label; then verify the
    // reversed visit order is a perfect elimination ordering.
    const auto& verts = g.vertices();
    std::map<std::string, std::size_t> weight;
    std::set<std::string> pending;
    for (const auto& v : verts) {
        weight[v] = 0;
        pending.insert(v);
    }
    std::vector<std::string> visit_order;
    while (!pending.empty()) {
        std::string best;
        std::size_t best_w = 0;
        for (const auto& v : pending) {
            if (best.empty() || weight[v] > best_w) {
                best = v;
                best_w = weight[v];
            }
        }
        pending.erase(best);
        visit_order.push_back(best);
        for (const auto& w : g.neighbors(best))
            if (pending.count(w)) ++weight[w];
    }

    std::vector<std::string> elim(visit_order.rbegin(), visit_order.rend());
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < elim.size(); ++i) position[elim[i]] = i;

    for (std::size_t i = 0; i < elim.size(); ++i) {
        std::vector<std::string> later;
        for (const auto& w : g.neighbors(elim[i]))
            if (position[w] > i) later.push_back(w);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!g.has_edge(later[a], later[b])) return {false, {}};
    }
    return {true, elim};
}

std::size_t component_count(const Graph& g) {
    std::set<std::string> visited;
    std::size_t components = 0;
    for (const auto& root : g.vertices()) {
        if (visited.count(root)) continue;
        ++components;
        std::vector<std::string> stack{root};
        while (!stack.empty()) {
            std::string v = stack.back();
            stack.pop_back();
            if (!visited.insert(v).second) continue;
            for (const auto& w : g.neighbors(v))
                if (!visited.count(w)) stack.push_back(w);
        }
    }
    return components;
}

bool caterpillar_penny_check(const Graph& g) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("caterpillar_penny_check: empty graph");
    auto forest = is_forest(g);
    if (!forest.is_forest) {
        std::string msg = "caterpillar_penny_check: input has a cycle:";
        for (const auto& v : forest.cycle) msg += " " + v;
        throw std::invalid_argument(msg);
    }
    if (component_count(g) != 1)
        throw std::invalid_argument("caterpillar_penny_check: input tree is disconnected");

    // Remove leaves; the remainder must be a path.
    std::set<std::string> core;
    for (const auto& v : g.vertices())
        if (g.degree(v) >= 2) core.insert(v);
    for (const auto& v : core) {
        std::size_t core_degree = 0;
        for (const auto& w : g.neighbors(v))
            if (core.count(w)) ++core_degree;
        if (core_degree > 2)
            throw std::invalid_argument(
                "caterpillar_penny_check: not a caterpillar, spine branches at '" + v + "'");
    }

    std::vector<std::string> heavy;
    for (const auto& v : g.vertices()) {
        if (g.degree(v) > 5) return false;
        if (g.degree(v) == 5) heavy.push_back(v);
    }

    // Unique tree path between every pair of degree-5 vertices must contain
    // a vertex of degree <= 3.
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        for (std::size_t j = i + 1; j < heavy.size(); ++j) {
            std::map<std::string, std::string> parent;
            std::vector<std::string> queue{heavy[i]};
            parent[heavy[i]] = heavy[i];
            for (std::size_t head = 0; head < queue.size(); ++head) {
                for (const auto& w : g.neighbors(queue[head])) {
                    if (!parent.count(w)) {
                        parent[w] = queue[head];
                        queue.push_back(w);
                    }
                }
            }
            bool relieved = false;
            std::string cur = heavy[j];
            while (true) {
                if (g.degree(cur) <= 3) {
                    relieved = true;
                    break;
                }
                if (cur == heavy[i]) break;
                cur = parent.at(cur);
            }
            if (!relieved) return false;
        }
    }
    return true;
}

namespace {

unsigned long long integer_sqrt(unsigned long long n) {
    if (n == 0) return 0;
    auto s = static_cast<unsigned long long>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

// floor(c - sqrt(k)) for integers c, k >= 0; exact at perfect squares.
long long floor_minus_sqrt(long long c, unsigned long long k) {
    unsigned long long s = integer_sqrt(k);
    bool exact = (s * s == k);
    return c - static_cast<long long>(s) - (exact ? 0 : 1);
}

}  // namespace

long long maxwell_bound(int d, long long n) {
    if (d < 1) throw std::invalid_argument("maxwell_bound: dimension must be positive");
    if (n < d)
        throw std::invalid_argument("maxwell_bound: needs at least d vertices (n >= d)");
    return static_cast<long long>(d) * n - static_cast<long long>(d) * (d + 1) / 2;
}

long long penny_edge_bound(long long n) {
    if (n < 1) throw std::invalid_argument("penny_edge_bound: n must be positive");
    return floor_minus_sqrt(3 * n, static_cast<unsigned long long>(12 * n - 3));
}

long long sphere_contact_bound(long long n) {
    if (n < 1) throw std::invalid_argument("sphere_contact_bound: n must be positive");
    return floor_minus_sqrt(5 * n + 1, static_cast<unsigned long long>(12 * n - 3));
}

}  // namespace packrigid
