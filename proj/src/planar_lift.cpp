#include "packrigid/planar_lift.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "packrigid/random.hpp"

namespace packrigid {

std::size_t PennyRealization::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == label) return i;
    throw std::invalid_argument("PennyRealization: unknown vertex '" + label + "'");
}

void check_penny(const PennyRealization& r, const ToleranceProfile& tol) {
    tol.check();
    if (r.vertices.size() != r.positions.size())
        throw std::invalid_argument("PennyRealization: vertices/positions size mismatch");
    std::set<std::string> seen;
    for (const auto& v : r.vertices)
        if (!seen.insert(v).second)
            throw std::invalid_argument("PennyRealization: duplicate vertex '" + v + "'");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!(norm(r.positions[i]) > 1.0))
            throw std::invalid_argument("PennyRealization: penny '" + r.vertices[i] +
                                        "' lies inside the forbidden unit disk");
    const double cd = PennyRealization::contact_distance;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (distance(r.positions[i], r.positions[j]) < cd * (1.0 - tol.overlap_tol))
                throw std::invalid_argument("PennyRealization: pennies '" + r.vertices[i] +
                                            "' and '" + r.vertices[j] + "' overlap");
}

Graph penny_contact_graph(const PennyRealization& r, const ToleranceProfile& tol) {
    check_penny(r, tol);
    const double cd = PennyRealization::contact_distance;
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (std::abs(distance(r.positions[i], r.positions[j]) - cd) <= tol.contact_tol * cd)
                edges.emplace_back(r.vertices[i], r.vertices[j]);
    return Graph(r.vertices, edges);
}

std::vector<Vec2> circle_circle_intersect(double p, double alpha, double beta, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw std::invalid_argument("circle_circle_intersect: p and q must be positive");
    if (alpha == 0.0 && beta == 0.0)
        throw std::invalid_argument("circle_circle_intersect: circles are concentric");

    // Subtracting the equations leaves 2 alpha x + 2 beta y = c.
    const double c = p - q + alpha * alpha + beta * beta;
    std::vector<Vec2> out;
    if (beta == 0.0) {
        double x = c / (2.0 * alpha);
        double y2 = p - x * x;
        if (y2 < 0.0) return out;
        double y = std::sqrt(y2);
        if (y == 0.0) {
            out.push_back({x, 0.0});
        } else {
            out.push_back({x, -y});
            out.push_back({x, y});
        }
        return out;
    }

    // Substitute y = (c - 2 alpha x) / (2 beta) into x^2 + y^2 = p.
    const double A = 4.0 * (alpha * alpha + beta * beta);
    const double B = -4.0 * alpha * c;
    const double C = c * c - 4.0 * beta * beta * p;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return out;
    if (disc == 0.0) {
        double x = -B / (2.0 * A);
        out.push_back({x, (c - 2.0 * alpha * x) / (2.0 * beta)});
        return out;
    }
    double root = std::sqrt(disc);
    for (double x : {(-B - root) / (2.0 * A), (-B + root) / (2.0 * A)})
        out.push_back({x, (c - 2.0 * alpha * x) / (2.0 * beta)});
    std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    return out;
}

Sphere penny_to_sphere(const Vec2& q) {
    double d2 = dot(q, q);
    if (!(d2 > 1.0)) {
        std::ostringstream os;
        os << "penny_to_sphere: ||q|| = " << std::sqrt(d2)
           << " lies inside the forbidden unit disk";
        throw std::invalid_argument(os.str());
    }
    double rho = 2.0 / (d2 - 1.0);
    return {Vec3{rho * q.x, rho * q.y, 0.0}, rho};
}

Vec2 sphere_to_penny(const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere_to_penny: radius must be positive");
    std::ostringstream residuals;
    bool ok = true;
    if (std::abs(center.z) > 1e-9) {
        residuals << " |z| = " << std::abs(center.z);
        ok = false;
    }
    for (double hub_z : {-1.0, 1.0}) {
        double res = std::abs(distance(center, Vec3{0, 0, hub_z}) - (radius + 1.0));
        if (res > 1e-9 * (radius + 1.0)) {
            residuals << " hub(z=" << hub_z << ") residual = " << res;
            ok = false;
        }
    }
    if (!ok)
        throw std::invalid_argument(
            "sphere_to_penny: sphere is not tangent to the standard hubs:" + residuals.str());
    return {center.x / radius, center.y / radius};
}

Packing lift_packing(const PennyRealization& r, const std::string& hub_a,
                     const std::string& hub_b, const ToleranceProfile& tol) {
    if (hub_a == hub_b)
        throw std::invalid_argument("lift_packing: hub labels coincide ('" + hub_a + "')");
    Graph pg = penny_contact_graph(r, tol);  // validates the realization
    Packing pk;
    pk.dimension = 3;
    for (std::size_t i = 0; i < r.size(); ++i) {
        Sphere s = penny_to_sphere(r.positions[i]);
        pk.labels.push_back(r.vertices[i]);
        pk.centers.push_back(s.center);
        pk.radii.push_back(s.radius);
    }
    pk.labels.push_back(hub_a);
    pk.centers.push_back({0, 0, -1});
    pk.radii.push_back(1.0);
    pk.labels.push_back(hub_b);
    pk.centers.push_back({0, 0, 1});
    pk.radii.push_back(1.0);
    pk.declared_graph = join_k2(pg, hub_a, hub_b);
    return pk;
}

namespace {

double hub_tangent_norm(double r) { return std::sqrt(r * (r + 2.0)); }

void check_chain_triangle(double r1, double d1, double r2, double d2, std::size_t index) {
    double s = r1 + r2;
    if (!(d1 + d2 > s) || !(s + d1 > d2) || !(s + d2 > d1)) {
        std::ostringstream os;
        os << "build_chain: triangle inequality fails between chain circles " << index << " and "
           << index + 1;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

ChainResult build_chain(const std::vector<double>& radii) {
    if (radii.size() < 2) throw std::invalid_argument("build_chain: need at least two radii");
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (!(radii[i] > 0.0))
            throw std::invalid_argument("build_chain: radius " + std::to_string(i + 1) +
                                        " must be positive");

    ChainResult chain;
    chain.radii = radii;
    double angle = 0.0;
    chain.positions.push_back({hub_tangent_norm(radii[0]), 0.0});
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        double d1 = hub_tangent_norm(radii[i]);
        double d2 = hub_tangent_norm(radii[i + 1]);
        check_chain_triangle(radii[i], d1, radii[i + 1], d2, i + 1);
        double s = radii[i] + radii[i + 1];
        double cosine = (d1 * d1 + d2 * d2 - s * s) / (2.0 * d1 * d2);
        angle -= std::acos(std::clamp(cosine, -1.0, 1.0));
        chain.positions.push_back({d2 * std::cos(angle), d2 * std::sin(angle)});
    }
    chain.closure_defect = distance(chain.positions.front(), chain.positions.back()) -
                           (radii.front() + radii.back());
    return chain;
}

std::vector<double> close_chain_solve(const std::vector<double>& prefix_radii, double bracket_lo,
                                      double bracket_hi) {
    if (prefix_radii.size() < 2)
        throw std::invalid_argument("close_chain_solve: prefix needs at least two radii (k >= 3)");
    if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo))
        throw std::invalid_argument("close_chain_solve: bracket must satisfy 0 < lo < hi");
    build_chain(prefix_radii);  // propagate prefix errors

    double last_r = prefix_radii.back();
    double last_d = hub_tangent_norm(last_r);
    auto feasible = [&](double x) {
        if (!(x > 0.0)) return false;
        double d = hub_tangent_norm(x);
        double s = last_r + x;
        return (last_d + d > s) && (s + last_d > d) && (s + d > last_d);
    };
    auto defect = [&](double x) {
        std::vector<double> full = prefix_radii;
        full.push_back(x);
        return build_chain(full).closure_defect;
    };

    if (!feasible(bracket_lo) || !feasible(bracket_hi))
        throw std::invalid_argument(
            "close_chain_solve: bracket endpoint violates the chain triangle inequalities");

    constexpr int kCells = 256;
    std::vector<double> roots;
    auto push_root = [&](double x) {
        for (double r : roots)
            if (std::abs(r - x) <= 1e-12 * std::max(1.0, std::abs(x))) return;
        if (std::abs(defect(x)) < 1e-12) roots.push_back(x);
    };

    double prev_x = bracket_lo;
    bool prev_ok = feasible(prev_x);
    double prev_f = prev_ok ? defect(prev_x) : 0.0;
    for (int cell = 1; cell <= kCells; ++cell) {
        double x = bracket_lo + (bracket_hi - bracket_lo) * cell / kCells;
        bool ok = feasible(x);
        double f = ok ? defect(x) : 0.0;
        if (ok && f == 0.0) push_root(x);
        if (ok && prev_ok && prev_f * f < 0.0) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = defect(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            push_root(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_ok = ok;
        prev_f = f;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Packing chain_to_packing(const ChainResult& chain, const std::string& hub_a,
                         const std::string& hub_b) {
    if (hub_a == hub_b)
        throw std::invalid_argument("chain_to_packing: hub labels coincide ('" + hub_a + "')");
    Packing pk;
    pk.dimension = 3;
    for (std::size_t i = 0; i < chain.positions.size(); ++i) {
        std::string label = "c" + std::to_string(i + 1);
        if (label == hub_a || label == hub_b)
            throw std::invalid_argument("chain_to_packing: hub label collides with '" + label +
                                        "'");
        pk.labels.push_back(label);
        pk.centers.push_back({chain.positions[i].x, chain.positions[i].y, 0.0});
        pk.radii.push_back(chain.radii[i]);
    }
    pk.labels.push_back(hub_a);
    pk.centers.push_back({0, 0, -1});
    pk.radii.push_back(1.0);
    pk.labels.push_back(hub_b);
    pk.centers.push_back({0, 0, 1});
    pk.radii.push_back(1.0);
    return pk;
}

namespace {

struct ComponentSplit {
    std::vector<std::vector<std::string>> components;  // sorted roots first
};

ComponentSplit forest_components(const Graph& g) {
    auto forest = is_forest(g);
    if (!forest.is_forest) {
        std::string msg = "input graph has a cycle:";
        for (const auto& v : forest.cycle) msg += " " + v;
        throw std::invalid_argument(msg);
    }
    ComponentSplit split;
    std::set<std::string> visited;
    std::vector<std::string> roots = g.vertices();
    std::sort(roots.begin(), roots.end());
    for (const auto& root : roots) {
        if (visited.count(root)) continue;
        std::vector<std::string> comp{root};
        visited.insert(root);
        for (std::size_t head = 0; head < comp.size(); ++head) {
            // Constrained (high degree) children first: they claim angular
            // space before the leaves fill in around them.
            std::vector<std::string> nbrs = g.neighbors(comp[head]);
            std::stable_sort(nbrs.begin(), nbrs.end(), [&](const auto& x, const auto& y) {
                return g.degree(x) > g.degree(y);
            });
            for (const auto& w : nbrs)
                if (visited.insert(w).second) comp.push_back(w);
        }
        split.components.push_back(std::move(comp));
    }
    return split;
}

}  // namespace

TreeRealizeResult realize_tree_with_radii(const Graph& tree,
                                          const std::map<std::string, double>& sphere_radii) {
    TreeRealizeResult result;
    ComponentSplit split = forest_components(tree);

    std::map<std::string, double> target_norm;
    for (const auto& v : tree.vertices()) {
        auto it = sphere_radii.find(v);
        if (it == sphere_radii.end() || !(it->second > 0.0))
            throw std::invalid_argument("realize_tree_with_radii: missing or non-positive radius "
                                        "for vertex '" + v + "'");
        double d = std::sqrt(1.0 + 2.0 / it->second);
        if (!(d > 1.0 + 1e-9)) {
            result.failure = "prescribed radius of '" + v + "' pins it onto the forbidden disk";
            return result;
        }
        target_norm[v] = d;
    }

    const double pi = std::acos(-1.0);
    std::map<std::string, Vec2> placed;
    long long budget = 500000;

    // Depth-first with backtracking over the two intersection branches,
    // upper (larger y) branch first.
    std::function<bool(const std::vector<std::string>&, std::size_t, std::string*)> extend =
        [&](const std::vector<std::string>& order, std::size_t next, std::string* blocked) {
            if (next == order.size()) return true;
            const std::string& v = order[next];
            if (--budget < 0) {
                *blocked = v;
                return false;
            }
            std::string parent;
            for (const auto& w : tree.neighbors(v))
                if (placed.count(w)) parent = w;
            Vec2 pv = placed.at(parent);
            std::vector<Vec2> branches;
            try {
                branches = circle_circle_intersect(target_norm[v] * target_norm[v], pv.x, pv.y,
                                                   4.0);
            } catch (const std::invalid_argument&) {
                branches.clear();
            }
            bool tried = false;
            for (auto it = branches.rbegin(); it != branches.rend(); ++it) {  // upper first
                const Vec2& q = *it;
                bool fits = norm(q) > 1.0 + 1e-9;
                for (const auto& [w, qw] : placed) {
                    if (!fits) break;
                    if (w == parent) continue;
                    if (distance(q, qw) <= 2.0 + 1e-9) fits = false;
                }
                if (!fits) continue;
                tried = true;
                placed[v] = q;
                if (extend(order, next + 1, blocked)) return true;
                placed.erase(v);
                if (budget < 0) return false;
            }
            if (!tried && blocked->empty()) *blocked = v;
            return false;
        };

    const std::size_t ncomp = split.components.size();
    for (std::size_t ci = 0; ci < ncomp; ++ci) {
        const auto& comp = split.components[ci];
        const std::string& root = comp.front();
        double base_angle = 2.0 * pi * static_cast<double>(ci) / static_cast<double>(ncomp);
        Vec2 root_pos{target_norm[root] * std::cos(base_angle),
                      target_norm[root] * std::sin(base_angle)};
        if (!(norm(root_pos) > 1.0 + 1e-9)) {
            result.failure = "root '" + root + "' cannot leave the forbidden disk";
            return result;
        }
        bool fits = true;
        for (const auto& [w, qw] : placed)
            if (distance(root_pos, qw) <= 2.0 + 1e-9) fits = false;
        if (!fits) {
            result.failure = "component root '" + root + "' collides with an earlier component";
            return result;
        }
        placed[root] = root_pos;
        std::string blocked;
        if (!extend(comp, 1, &blocked)) {
            result.failure = "branch exhaustion at vertex '" + blocked + "'";
            return result;
        }
    }

    PennyRealization r;
    for (const auto& v : tree.vertices()) {
        r.vertices.push_back(v);
        r.positions.push_back(placed.at(v));
    }
    if (penny_contact_graph(r) != tree) {
        result.failure = "layout contact graph does not match the input tree";
        return result;
    }
    result.ok = true;
    result.realization = std::move(r);
    return result;
}

LayoutResult heuristic_penny_layout(const Graph& tree, std::uint64_t seed) {
    LayoutResult result;
    ComponentSplit split;
    try {
        split = forest_components(tree);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("heuristic_penny_layout: ") + e.what());
    }

    const double pi = std::acos(-1.0);
    constexpr int kSlots = 24;
    constexpr double kSeparation = 0.02;  // non-adjacent pennies keep distance > 2 + this
    constexpr double kDiskMargin = 0.05;

    for (std::uint64_t attempt = 0; attempt < 48; ++attempt) {
        SplitMix64 rng = derive_stream(seed, attempt);
        std::map<std::string, Vec2> placed;
        long long budget = 20000;
        bool failed = false;
        // Early attempts jitter hard so the placements are generic (the
        // stress verdicts downstream need well-separated singular values);
        // later attempts calm down so tightly packed trees remain findable.
        const double jitter = 0.32 / (1.0 + static_cast<double>(attempt) / 6.0);

        std::function<bool(const Graph&, const std::vector<std::string>&, std::size_t)> extend =
            [&](const Graph& g, const std::vector<std::string>& order, std::size_t next) {
                if (next == order.size()) return true;
                if (budget < 0) return false;
                const std::string& v = order[next];
                std::string parent;
                for (const auto& w : g.neighbors(v))
                    if (placed.count(w)) parent = w;
                Vec2 pv = placed.at(parent);
                double base = 0.0;
                {
                    // Fan children away from the grandparent when there is one.
                    std::string grand;
                    for (const auto& w : g.neighbors(parent))
                        if (w != v && placed.count(w)) grand = w;
                    if (!grand.empty()) {
                        Vec2 dir = pv - placed.at(grand);
                        base = std::atan2(dir.y, dir.x);
                    } else {
                        base = std::atan2(pv.y, pv.x);  // away from the forbidden disk
                    }
                }
                std::vector<int> slots(kSlots);
                for (int s = 0; s < kSlots; ++s) slots[s] = s;
                // Bias toward continuing straight, then shuffle a little.
                for (int s = kSlots - 1; s > 0; --s) {
                    if (rng.next_double() < 0.35)
                        std::swap(slots[s], slots[rng.next_below(static_cast<std::uint64_t>(s + 1))]);
                }
                for (int slot : slots) {
                    if (--budget < 0) return false;  // budget counts candidate placements
                    double spread = (slot % 2 == 0 ? 1.0 : -1.0) * ((slot + 1) / 2) *
                                    (2.0 * pi / kSlots);
                    double theta = base + spread + rng.uniform(-jitter, jitter);
                    Vec2 q{pv.x + 2.0 * std::cos(theta), pv.y + 2.0 * std::sin(theta)};
                    if (!(norm(q) > 1.0 + kDiskMargin)) continue;
                    bool fits = true;
                    for (const auto& [w, qw] : placed) {
                        if (w == parent) continue;
                        if (distance(q, qw) <= 2.0 + kSeparation) {
                            fits = false;
                            break;
                        }
                    }
                    if (!fits) continue;
                    placed[v] = q;
                    if (extend(g, order, next + 1)) return true;
                    placed.erase(v);
                    if (budget < 0) return false;
                }
                return false;
            };

        double offset = 0.0;
        for (const auto& comp : split.components) {
            const std::string& root = comp.front();
            placed[root] = {offset + 2.0 + 2.0 * static_cast<double>(comp.size()), 0.0};
            if (!extend(tree, comp, 1)) {
                failed = true;
                break;
            }
            offset += 4.0 * static_cast<double>(comp.size()) + 8.0;
        }
        if (failed) continue;

        PennyRealization r;
        for (const auto& v : tree.vertices()) {
            r.vertices.push_back(v);
            r.positions.push_back(placed.at(v));
        }
        try {
            if (penny_contact_graph(r) != tree) continue;
        } catch (const std::invalid_argument&) {
            continue;
        }
        result.ok = true;
        result.realization = std::move(r);
        return result;
    }
    result.failure = "layout budget exhausted";
    return result;
}

}  // namespace packrigid
