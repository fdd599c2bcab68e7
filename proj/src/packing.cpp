#include "packrigid/packing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace packrigid {

std::size_t Packing::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("Packing: unknown vertex '" + label + "'");
}

namespace {

void check_shape(const Packing& pk) {
    if (pk.dimension != 2 && pk.dimension != 3)
        throw std::invalid_argument("Packing: dimension must be 2 or 3");
    if (pk.centers.size() != pk.labels.size() || pk.radii.size() != pk.labels.size())
        throw std::invalid_argument("Packing: centers/radii size mismatch with labels");
    for (std::size_t i = 0; i < pk.size(); ++i) {
        if (!(pk.radii[i] > 0.0))
            throw std::invalid_argument("Packing: non-positive radius at vertex '" +
                                        pk.labels[i] + "'");
        if (pk.dimension == 2 && pk.centers[i].z != 0.0)
            throw std::invalid_argument("Packing: 2-dimensional packing with nonzero z at '" +
                                        pk.labels[i] + "'");
    }
}

}  // namespace

std::vector<PairReport> ValidationReport::overlaps() const {
    std::vector<PairReport> out;
    for (const auto& p : pairs)
        if (p.cls == PairClass::Overlap) out.push_back(p);
    return out;
}

std::string ValidationReport::summary() const {
    std::size_t contacts = 0, overlaps_n = 0;
    for (const auto& p : pairs) {
        if (p.cls == PairClass::Contact) ++contacts;
        if (p.cls == PairClass::Overlap) ++overlaps_n;
    }
    std::ostringstream os;
    os << (valid ? "valid" : "invalid") << ", " << contacts << " contacts, " << overlaps_n
       << " overlaps";
    if (!missing_declared.empty() || !undeclared_contacts.empty())
        os << ", " << missing_declared.size() << " declared edges without contact, "
           << undeclared_contacts.size() << " undeclared contacts";
    return os.str();
}

ValidationReport validate(const Packing& pk, const ToleranceProfile& tol) {
    tol.check();
    check_shape(pk);

    ValidationReport report;
    report.valid = true;
    const std::size_t n = pk.size();
    report.pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double scale = pk.radii[i] + pk.radii[j];
            double gap = distance(pk.centers[i], pk.centers[j]) - scale;
            PairReport pr;
            pr.v = pk.labels[i];
            pr.w = pk.labels[j];
            pr.gap = gap;
            if (gap > tol.contact_tol * scale)
                pr.cls = PairClass::Separated;
            else if (gap < -tol.overlap_tol * scale) {
                pr.cls = PairClass::Overlap;
                report.valid = false;
            } else
                pr.cls = PairClass::Contact;
            report.pairs.push_back(pr);
        }
    }

    if (pk.declared_graph) {
        const Graph& g = *pk.declared_graph;
        for (const auto& pr : report.pairs) {
            bool declared = g.has_vertex(pr.v) && g.has_vertex(pr.w) && g.has_edge(pr.v, pr.w);
            bool contact = pr.cls == PairClass::Contact;
            if (declared && !contact) report.missing_declared.emplace_back(pr.v, pr.w);
            if (!declared && contact) report.undeclared_contacts.emplace_back(pr.v, pr.w);
        }
    }
    return report;
}

Graph contact_graph(const Packing& pk, const ToleranceProfile& tol) {
    ValidationReport report = validate(pk, tol);
    if (!report.valid)
        throw ValidationError("contact_graph: packing is invalid (" + report.summary() + ")",
                              report);
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& pr : report.pairs)
        if (pr.cls == PairClass::Contact) edges.emplace_back(pr.v, pr.w);
    return Graph(pk.labels, edges);
}

Packing normalize_pose(const Packing& pk, const std::string& hub_a, const std::string& hub_b) {
    check_shape(pk);
    if (pk.dimension != 3)
        throw std::invalid_argument("normalize_pose: requires a 3-dimensional packing");
    std::size_t ia = pk.index_of(hub_a);
    std::size_t ib = pk.index_of(hub_b);
    Vec3 pa = pk.centers[ia], pb = pk.centers[ib];
    double gap = distance(pa, pb);
    if (gap == 0.0) throw std::invalid_argument("normalize_pose: hub centers coincide");

    Mat3 rot = rotation_between((pb - pa) * (1.0 / gap), Vec3{0, 0, 1});
    Vec3 target{0, 0, -pk.radii[ia]};

    Packing out = pk;
    for (std::size_t i = 0; i < pk.size(); ++i)
        out.centers[i] = rot * (pk.centers[i] - pa) + target;
    return out;
}

}  // namespace packrigid
