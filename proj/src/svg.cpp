#include "packrigid/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "packrigid/graph.hpp"

namespace packrigid {

namespace {

std::string fmt(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

struct Disk {
    std::string label;
    double x = 0.0, y = 0.0, r = 0.0;
    bool outline_only = false;
};

struct Contact {
    std::string u, v;
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

// SVG's y axis points down; flip y when emitting so the picture matches the
// mathematical plane.
std::string render(std::vector<Disk> disks, std::vector<Contact> contacts,
                   const std::string& annotation) {
    std::sort(disks.begin(), disks.end(),
              [](const Disk& a, const Disk& b) { return a.label < b.label; });
    std::sort(contacts.begin(), contacts.end(), [](const Contact& a, const Contact& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
    for (const auto& d : disks) {
        lo_x = std::min(lo_x, d.x - d.r);
        hi_x = std::max(hi_x, d.x + d.r);
        lo_y = std::min(lo_y, d.y - d.r);
        hi_y = std::max(hi_y, d.y + d.r);
    }
    double margin = 0.1 * std::max(hi_x - lo_x, hi_y - lo_y);
    lo_x -= margin;
    hi_x += margin;
    lo_y -= margin;
    hi_y += margin;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(lo_x) + " " +
           fmt(-hi_y) + " " + fmt(hi_x - lo_x) + " " + fmt(hi_y - lo_y) + "\">\n";
    double stroke = 0.01 * std::max(hi_x - lo_x, hi_y - lo_y);
    for (const auto& c : contacts)
        svg += "  <line x1=\"" + fmt(c.x1) + "\" y1=\"" + fmt(-c.y1) + "\" x2=\"" + fmt(c.x2) +
               "\" y2=\"" + fmt(-c.y2) + "\" stroke=\"#888888\" stroke-width=\"" + fmt(stroke) +
               "\"/>\n";
    for (const auto& d : disks)
        svg += "  <circle cx=\"" + fmt(d.x) + "\" cy=\"" + fmt(-d.y) + "\" r=\"" + fmt(d.r) +
               "\" fill=\"none\" stroke=\"" + (d.outline_only ? "#bbbbbb" : "#000000") +
               "\" stroke-width=\"" + fmt(stroke) +
               (d.outline_only ? "\" stroke-dasharray=\"" + fmt(4 * stroke) : "") + "\"/>\n";
    if (!annotation.empty())
        svg += "  <text x=\"" + fmt(lo_x + margin * 0.2) + "\" y=\"" + fmt(-lo_y - margin * 0.2) +
               "\" font-size=\"" + fmt(margin * 0.6) + "\">" + annotation + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace

std::string plot_penny_svg(const PennyRealization& r, const ToleranceProfile& tol) {
    Graph g = penny_contact_graph(r, tol);
    std::vector<Disk> disks;
    for (std::size_t i = 0; i < r.size(); ++i)
        disks.push_back({r.vertices[i], r.positions[i].x, r.positions[i].y, 1.0, false});
    std::vector<Contact> contacts;
    for (const auto& [u, v] : g.edges()) {
        const Vec2& pu = r.positions[r.index_of(u)];
        const Vec2& pv = r.positions[r.index_of(v)];
        contacts.push_back({u, v, pu.x, pu.y, pv.x, pv.y});
    }
    return render(std::move(disks), std::move(contacts), "");
}

std::string plot_packing_svg(const Packing& pk, const ToleranceProfile& tol) {
    // Standard-form check: exactly two unit spheres at (0,0,-1)/(0,0,1), the
    // rest on z = 0.
    constexpr double kPoseTol = 1e-6;
    std::string hub_lo, hub_hi;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const Vec3& c = pk.centers[i];
        if (std::abs(pk.radii[i] - 1.0) < kPoseTol && std::abs(c.x) < kPoseTol &&
            std::abs(c.y) < kPoseTol) {
            if (std::abs(c.z + 1.0) < kPoseTol && hub_lo.empty()) {
                hub_lo = pk.labels[i];
                continue;
            }
            if (std::abs(c.z - 1.0) < kPoseTol && hub_hi.empty()) {
                hub_hi = pk.labels[i];
                continue;
            }
        }
        if (std::abs(c.z) >= kPoseTol)
            throw std::invalid_argument(
                "plot: packing is not in standard form (sphere '" + pk.labels[i] +
                "' off the z = 0 plane); run standard_form first");
    }
    if (hub_lo.empty() || hub_hi.empty())
        throw std::invalid_argument(
            "plot: packing is not in standard form (missing unit hub spheres at (0,0,-1) and "
            "(0,0,1)); run standard_form first");

    Graph g = pk.declared_graph ? *pk.declared_graph : contact_graph(pk, tol);
    std::vector<Disk> disks;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        bool hub = pk.labels[i] == hub_lo || pk.labels[i] == hub_hi;
        if (hub)
            disks.push_back({pk.labels[i], 0.0, 0.0, 1.0, true});
        else
            disks.push_back(
                {pk.labels[i], pk.centers[i].x, pk.centers[i].y, pk.radii[i], false});
    }
    auto xy = [&](const std::string& label) {
        const Vec3& c = pk.centers[pk.index_of(label)];
        return Vec2{c.x, c.y};
    };
    std::vector<Contact> contacts;
    for (const auto& [u, v] : g.edges()) {
        Vec2 pu = xy(u), pv = xy(v);
        contacts.push_back({u, v, pu.x, pu.y, pv.x, pv.y});
    }
    return render(std::move(disks), std::move(contacts), "");
}

std::string plot_chain_svg(const ChainResult& chain) {
    std::vector<Disk> disks;
    std::vector<Contact> contacts;
    for (std::size_t i = 0; i < chain.positions.size(); ++i) {
        std::string label = "c" + std::to_string(i + 1);
        disks.push_back({label, chain.positions[i].x, chain.positions[i].y, chain.radii[i],
                         false});
        if (i + 1 < chain.positions.size())
            contacts.push_back({label, "c" + std::to_string(i + 2), chain.positions[i].x,
                                chain.positions[i].y, chain.positions[i + 1].x,
                                chain.positions[i + 1].y});
    }
    disks.push_back({"hub", 0.0, 0.0, 1.0, true});
    if (chain.positions.size() >= 3 && std::abs(chain.closure_defect) < 1e-9)
        contacts.push_back({"c" + std::to_string(chain.positions.size()), "c1",
                            chain.positions.back().x, chain.positions.back().y,
                            chain.positions.front().x, chain.positions.front().y});
    return render(std::move(disks), std::move(contacts),
                  "closure defect " + fmt(chain.closure_defect));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace packrigid
