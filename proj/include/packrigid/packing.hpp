#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "packrigid/geometry.hpp"
#include "packrigid/graph.hpp"

namespace packrigid {

// Relative tolerances; the contact predicate must be scale invariant because
// Moebius images spread radii over orders of magnitude.
struct ToleranceProfile {
    double contact_tol = 1e-9;
    double overlap_tol = 1e-9;
    double rank_tol = 1e-8;

    void check() const {
        for (double t : {contact_tol, overlap_tol, rank_tol})
            if (!(t > 0.0) || !(t < 1e-2))
                throw std::invalid_argument("ToleranceProfile: tolerances must lie in (0, 1e-2)");
    }
};

// A sphere (d=3) or circle (d=2) packing candidate. For dimension 2 the z
// coordinates must be zero. The declared graph, when present, records the
// intended contact graph so pipelines can assert it was preserved.
struct Packing {
    int dimension = 3;
    std::vector<std::string> labels;
    std::vector<Vec3> centers;
    std::vector<double> radii;
    std::optional<Graph> declared_graph;

    std::size_t size() const { return labels.size(); }
    std::size_t index_of(const std::string& label) const;
};

enum class PairClass { Separated, Contact, Overlap };

struct PairReport {
    std::string v;
    std::string w;
    PairClass cls = PairClass::Separated;
    double gap = 0.0;  // ||p_v - p_w|| - (r_v + r_w)
};

struct ValidationReport {
    bool valid = false;
    std::vector<PairReport> pairs;               // all unordered pairs, sorted
    std::vector<std::pair<std::string, std::string>> missing_declared;  // declared edge, no contact
    std::vector<std::pair<std::string, std::string>> undeclared_contacts;

    std::vector<PairReport> overlaps() const;
    std::string summary() const;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, ValidationReport report)
        : std::runtime_error(what), report(std::move(report)) {}
    ValidationReport report;
};

// Classifies every vertex pair by the sign of gap relative to r_v + r_w.
// Throws std::invalid_argument for non-positive radii; a geometric defect
// (overlap, coincident centers) is reported, never thrown.
ValidationReport validate(const Packing& pk, const ToleranceProfile& tol = {});

// Graph over the packing's labels whose edges are exactly the CONTACT pairs.
// Throws ValidationError when the packing is invalid.
Graph contact_graph(const Packing& pk, const ToleranceProfile& tol = {});

// Rigid motion placing hub_a's center at (0,0,-r_a) and hub_b's on the
// positive z-axis; for tangent hubs that is (0,0,+r_b). 3-dimensional only.
Packing normalize_pose(const Packing& pk, const std::string& hub_a, const std::string& hub_b);

}  // namespace packrigid
