#include "packrigid/json_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace packrigid {

std::string json_number(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("json_number: non-finite value");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string json_escape(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

std::string json_array(const std::vector<std::string>& rendered_items) {
    std::string out = "[";
    for (std::size_t i = 0; i < rendered_items.size(); ++i) {
        if (i) out += ',';
        out += rendered_items[i];
    }
    out += ']';
    return out;
}

std::string json_object(const std::vector<std::pair<std::string, std::string>>& fields) {
    std::string out = "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += json_escape(fields[i].first);
        out += ':';
        out += fields[i].second;
    }
    out += '}';
    return out;
}

namespace {

std::string num_list(const std::vector<double>& values) {
    std::vector<std::string> items;
    items.reserve(values.size());
    for (double v : values) items.push_back(json_number(v));
    return json_array(items);
}

std::string vec3_json(const Vec3& v, int dimension = 3) {
    std::vector<std::string> coords{json_number(v.x), json_number(v.y)};
    if (dimension == 3) coords.push_back(json_number(v.z));
    return json_array(coords);
}

std::string vec2_json(const Vec2& v) {
    return json_array({json_number(v.x), json_number(v.y)});
}

std::string edge_list_json(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<std::string> items;
    for (const auto& [u, v] : edges)
        items.push_back(json_array({json_escape(u), json_escape(v)}));
    return json_array(items);
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_json(const Graph& g) {
    std::vector<std::string> verts;
    for (const auto& v : g.vertices()) verts.push_back(json_escape(v));
    std::vector<std::pair<std::string, std::string>> edges(g.edges().begin(), g.edges().end());
    return json_object({{"vertices", json_array(verts)}, {"edges", edge_list_json(edges)}});
}

std::string to_json(const Packing& pk) {
    std::vector<std::string> spheres;
    for (std::size_t i = 0; i < pk.size(); ++i)
        spheres.push_back(json_object({{"id", json_escape(pk.labels[i])},
                                       {"center", vec3_json(pk.centers[i], pk.dimension)},
                                       {"radius", json_number(pk.radii[i])}}));
    std::vector<std::pair<std::string, std::string>> fields{
        {"dimension", std::to_string(pk.dimension)}, {"spheres", json_array(spheres)}};
    if (pk.declared_graph) fields.emplace_back("graph", to_json(*pk.declared_graph));
    return json_object(fields);
}

std::string to_json(const PennyRealization& r) {
    std::vector<std::string> pennies;
    for (std::size_t i = 0; i < r.size(); ++i)
        pennies.push_back(json_object(
            {{"id", json_escape(r.vertices[i])}, {"position", vec2_json(r.positions[i])}}));
    return json_object({{"pennies", json_array(pennies)},
                        {"contact_distance", json_number(PennyRealization::contact_distance)}});
}

std::string to_json(const ChainResult& chain) {
    std::vector<std::string> pos;
    for (const auto& p : chain.positions) pos.push_back(vec2_json(p));
    return json_object({{"radii", num_list(chain.radii)},
                        {"positions", json_array(pos)},
                        {"closure_defect", json_number(chain.closure_defect)}});
}

std::string to_json(const MoebiusTransform& t) {
    std::vector<std::string> rows;
    for (int i = 0; i < 3; ++i)
        rows.push_back(json_array({json_number(t.A.m[i][0]), json_number(t.A.m[i][1]),
                                   json_number(t.A.m[i][2])}));
    return json_object({{"a", vec3_json(t.a)},
                        {"b", vec3_json(t.b)},
                        {"lambda", json_number(t.lambda)},
                        {"tau", std::to_string(t.tau)},
                        {"A", json_array(rows)}});
}

std::string to_json(const TransformPipeline& pipeline) {
    std::vector<std::string> stages;
    for (const auto& s : pipeline.stages) stages.push_back(to_json(s));
    return json_array(stages);
}

std::string to_json(const ValidationReport& report) {
    std::vector<std::string> pairs;
    for (const auto& p : report.pairs) {
        const char* cls = p.cls == PairClass::Contact
                              ? "contact"
                              : (p.cls == PairClass::Overlap ? "overlap" : "separated");
        pairs.push_back(json_object({{"v", json_escape(p.v)},
                                     {"w", json_escape(p.w)},
                                     {"class", json_escape(cls)},
                                     {"gap", json_number(p.gap)}}));
    }
    return json_object({{"valid", bool_json(report.valid)},
                        {"pairs", json_array(pairs)},
                        {"missing_declared", edge_list_json(report.missing_declared)},
                        {"undeclared_contacts", edge_list_json(report.undeclared_contacts)}});
}

std::string to_json(const StressReport& report) {
    std::vector<std::string> basis;
    for (const auto& vec : report.stress_basis) basis.push_back(num_list(vec));
    return json_object({{"edge_count", std::to_string(report.edge_count)},
                        {"dof", std::to_string(report.dof)},
                        {"rank", std::to_string(report.rank)},
                        {"stress_dim", std::to_string(report.stress_dim)},
                        {"sigma_min_ratio", json_number(report.sigma_min_ratio)},
                        {"singular_values", num_list(report.singular_values)},
                        {"edges", edge_list_json(report.edge_order)},
                        {"stress_basis", json_array(basis)}});
}

namespace {

std::string config_json(const ExperimentConfig& cfg) {
    return json_object({{"seed", std::to_string(cfg.seed)},
                        {"trials", std::to_string(cfg.trials)},
                        {"tree_size_min", std::to_string(cfg.tree_size_min)},
                        {"tree_size_max", std::to_string(cfg.tree_size_max)},
                        {"radii_lo", json_number(cfg.radii_lo)},
                        {"radii_hi", json_number(cfg.radii_hi)},
                        {"contact_tol", json_number(cfg.tolerance.contact_tol)},
                        {"overlap_tol", json_number(cfg.tolerance.overlap_tol)},
                        {"rank_tol", json_number(cfg.tolerance.rank_tol)}});
}

}  // namespace

std::string to_json(const StressExperimentReport& report) {
    std::vector<std::string> records;
    for (const auto& rec : report.records) {
        std::vector<std::pair<std::string, std::string>> fields{
            {"trial", std::to_string(rec.index)},
            {"tree_size", std::to_string(rec.tree_size)},
            {"tree_edges", edge_list_json(rec.tree_edges)},
            {"layout_ok", bool_json(rec.layout_ok)}};
        if (!rec.layout_ok) {
            fields.emplace_back("layout_failure", json_escape(rec.layout_failure));
        } else {
            fields.emplace_back("stress_free", bool_json(rec.stress_free));
            fields.emplace_back("certificate_ok", bool_json(rec.certificate_ok));
            fields.emplace_back("certificate_agrees", bool_json(rec.certificate_agrees));
            fields.emplace_back("edge_count", std::to_string(rec.edge_count));
            fields.emplace_back("stress_dim", std::to_string(rec.stress_dim));
            fields.emplace_back("sigma_min_ratio", json_number(rec.sigma_min_ratio));
            fields.emplace_back("sigma_rank_gap", json_number(rec.sigma_rank_gap));
        }
        records.push_back(json_object(fields));
    }
    std::string aggregate =
        json_object({{"layouts_ok", std::to_string(report.layouts_ok)},
                     {"stress_free", std::to_string(report.stress_free_count)},
                     {"certificates_ok", std::to_string(report.certificates_ok)},
                     {"disagreements", std::to_string(report.disagreements)}});
    return json_object({{"kind", json_escape("montecarlo_stressfree")},
                        {"version", json_escape(kToolkitVersion)},
                        {"config", config_json(report.config)},
                        {"aggregate", aggregate},
                        {"records", json_array(records)}});
}

std::string to_json(const ChainExperimentReport& report) {
    std::vector<std::string> records;
    for (const auto& rec : report.records) {
        std::vector<std::pair<std::string, std::string>> fields{
            {"trial", std::to_string(rec.index)},
            {"k", std::to_string(rec.k)},
            {"radii", num_list(rec.radii)},
            {"built", bool_json(rec.built)}};
        if (rec.built)
            fields.emplace_back("abs_defect", json_number(rec.abs_defect));
        else
            fields.emplace_back("failure", json_escape(rec.failure));
        records.push_back(json_object(fields));
    }
    std::vector<std::string> closures;
    for (const auto& c : report.closures)
        closures.push_back(json_object({{"k", std::to_string(c.k)},
                                        {"prefix", num_list(c.prefix)},
                                        {"roots", num_list(c.roots)},
                                        {"rebuilt_defects", num_list(c.rebuilt_defects)}}));
    std::string aggregate =
        json_object({{"built", std::to_string(report.built_count)},
                     {"min_abs_defect", json_number(report.min_abs_defect)}});
    return json_object({{"kind", json_escape("montecarlo_chain")},
                        {"version", json_escape(kToolkitVersion)},
                        {"config", config_json(report.config)},
                        {"k_min", std::to_string(report.k_min)},
                        {"k_max", std::to_string(report.k_max)},
                        {"aggregate", aggregate},
                        {"records", json_array(records)},
                        {"closures", json_array(closures)}});
}

namespace {

using nlohmann::json;

Vec3 parse_center(const json& j, int dimension, const std::string& where) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(dimension))
        throw std::invalid_argument("JSON: " + where + " center needs " +
                                    std::to_string(dimension) + " coordinates");
    Vec3 v;
    v.x = j[0].get<double>();
    v.y = j[1].get<double>();
    v.z = dimension == 3 ? j[2].get<double>() : 0.0;
    return v;
}

Graph graph_from(const json& j) {
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("JSON: graph edge must be a pair of labels");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return Graph(vertices, edges);
}

}  // namespace

Graph graph_from_json(const std::string& text) { return graph_from(json::parse(text)); }

Packing packing_from_json(const std::string& text) {
    json j = json::parse(text);
    Packing pk;
    pk.dimension = j.value("dimension", 3);
    for (const auto& s : j.at("spheres")) {
        pk.labels.push_back(s.at("id").get<std::string>());
        pk.centers.push_back(parse_center(s.at("center"), pk.dimension,
                                          "sphere '" + pk.labels.back() + "'"));
        pk.radii.push_back(s.at("radius").get<double>());
    }
    if (j.contains("graph")) pk.declared_graph = graph_from(j.at("graph"));
    return pk;
}

PennyRealization penny_from_json(const std::string& text) {
    json j = json::parse(text);
    PennyRealization r;
    if (j.contains("contact_distance") &&
        j.at("contact_distance").get<double>() != PennyRealization::contact_distance)
        throw std::invalid_argument("JSON: contact_distance must be 2");
    for (const auto& p : j.at("pennies")) {
        r.vertices.push_back(p.at("id").get<std::string>());
        const auto& pos = p.at("position");
        if (!pos.is_array() || pos.size() != 2)
            throw std::invalid_argument("JSON: penny position must be [x, y]");
        r.positions.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    return r;
}

ChainResult chain_from_json(const std::string& text) {
    json j = json::parse(text);
    ChainResult chain;
    for (const auto& r : j.at("radii")) chain.radii.push_back(r.get<double>());
    for (const auto& p : j.at("positions")) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("JSON: chain position must be [x, y]");
        chain.positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    chain.closure_defect = j.value("closure_defect", 0.0);
    if (chain.radii.size() != chain.positions.size())
        throw std::invalid_argument("JSON: chain radii/positions size mismatch");
    return chain;
}

}  // namespace packrigid
