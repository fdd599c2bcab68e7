#pragma once

#include <string>
#include <vector>

#include "packrigid/geometry.hpp"
#include "packrigid/packing.hpp"

namespace packrigid {

// The parametric map u -> a + lambda * A (u - b) / ||u - b||^tau with
// tau in {0, 2} and A orthogonal. tau = 0 is a similarity, tau = 2 an
// inversion-type map with singularity b.
struct MoebiusTransform {
    Vec3 a{};
    Vec3 b{};
    double lambda = 1.0;
    int tau = 0;
    Mat3 A = Mat3::identity();

    MoebiusTransform() = default;
    MoebiusTransform(Vec3 a, Vec3 b, double lambda, int tau, Mat3 A);

    bool has_singularity() const { return tau == 2; }

    static MoebiusTransform identity() { return {}; }
    static MoebiusTransform translation(const Vec3& shift);
    static MoebiusTransform scaling(double factor);
    static MoebiusTransform rigid(const Mat3& rotation, const Vec3& pivot, const Vec3& target);
    // u -> b + lambda (u - b) / ||u - b||^2
    static MoebiusTransform inversion(const Vec3& center, double lambda);
};

// Ordered stage list; compositions are evaluated stage by stage and never
// collapsed algebraically.
struct TransformPipeline {
    std::vector<MoebiusTransform> stages;

    TransformPipeline() = default;
    explicit TransformPipeline(std::vector<MoebiusTransform> s) : stages(std::move(s)) {}
    std::size_t size() const { return stages.size(); }
};

class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, int stage)
        : std::runtime_error(what), stage_index(stage) {}
    int stage_index;
};

Vec3 apply_point(const MoebiusTransform& t, const Vec3& u);
Vec3 apply_point(const TransformPipeline& pipeline, const Vec3& u);

// Image of a sphere: a sphere in cases (i)/(ii), a punctured plane when the
// singularity lies on the sphere.
struct SphereImage {
    enum class Kind { Sphere, Plane };
    Kind kind = Kind::Sphere;
    Vec3 center{};        // sphere centre, or a point on the plane
    double radius = 0.0;  // sphere case only
    Vec3 normal{};        // plane case only, unit length
};

SphereImage apply_sphere(const MoebiusTransform& t, const Vec3& center, double radius);

// u -> (t,0,0) + t^2 (u - (t,0,0)) / ||u - (t,0,0)||^2. Fixes the origin,
// fixes every sphere through the origin with centre on the z-axis, and
// shrinks everything else.
MoebiusTransform shrink_transform(double t_param);

// r_v t^2 / (||t e_x - p_v||^2 - r_v^2), valid while the singularity stays
// outside the sphere.
double predicted_radius(double t_param, const Vec3& center, double radius);

struct StandardFormResult {
    Packing packing;
    TransformPipeline pipeline;
};

// Moebius-normalizes a G (+) K2 packing: hub spheres of radius 1 centred at
// (0,0,-1) and (0,0,1) (larger input hub at the bottom), every other centre
// on the z = 0 plane, contact graph preserved.
StandardFormResult standard_form(const Packing& pk, const std::string& hub_a,
                                 const std::string& hub_b, const ToleranceProfile& tol = {});

// The five-stage pipeline mapping (0,0,0)->(0,0,0), (0,0,2mu)->(0,0,2),
// (0,0,-2lambda)->(0,0,-2); requires lambda > mu > 0.
TransformPipeline scale_standard_form(double lambda, double mu);

}  // namespace packrigid
