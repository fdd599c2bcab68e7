#include "packrigid/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace packrigid {

MoebiusTransform::MoebiusTransform(Vec3 a_, Vec3 b_, double lambda_, int tau_, Mat3 A_)
    : a(a_), b(b_), lambda(lambda_), tau(tau_), A(A_) {
    if (lambda == 0.0) throw std::invalid_argument("MoebiusTransform: lambda must be nonzero");
    if (tau != 0 && tau != 2) throw std::invalid_argument("MoebiusTransform: tau must be 0 or 2");
    if (orthogonality_defect(A) > 1e-12)
        throw std::invalid_argument("MoebiusTransform: A is not orthogonal within 1e-12");
}

MoebiusTransform MoebiusTransform::translation(const Vec3& shift) {
    return {shift, Vec3{}, 1.0, 0, Mat3::identity()};
}

MoebiusTransform MoebiusTransform::scaling(double factor) {
    return {Vec3{}, Vec3{}, factor, 0, Mat3::identity()};
}

MoebiusTransform MoebiusTransform::rigid(const Mat3& rotation, const Vec3& pivot,
                                         const Vec3& target) {
    return {target, pivot, 1.0, 0, rotation};
}

MoebiusTransform MoebiusTransform::inversion(const Vec3& center, double lambda) {
    return {center, center, lambda, 2, Mat3::identity()};
}

namespace {

Vec3 apply_point_stage(const MoebiusTransform& t, const Vec3& u, int stage_index) {
    Vec3 d = u - t.b;
    if (t.tau == 0) return t.a + (t.A * d) * t.lambda;
    double n2 = norm_squared(d);
    if (n2 == 0.0) {
        std::ostringstream os;
        os << "apply_point: input hits the singularity of stage " << stage_index;
        throw SingularityError(os.str(), stage_index);
    }
    return t.a + (t.A * d) * (t.lambda / n2);
}

}  // namespace

Vec3 apply_point(const MoebiusTransform& t, const Vec3& u) { return apply_point_stage(t, u, 0); }

Vec3 apply_point(const TransformPipeline& pipeline, const Vec3& u) {
    if (pipeline.stages.empty())
        throw std::invalid_argument("apply_point: pipeline must be non-empty");
    Vec3 cur = u;
    for (std::size_t i = 0; i < pipeline.stages.size(); ++i)
        cur = apply_point_stage(pipeline.stages[i], cur, static_cast<int>(i));
    return cur;
}

SphereImage apply_sphere(const MoebiusTransform& t, const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("apply_sphere: radius must be positive");
    SphereImage out;
    if (t.tau == 0) {
        out.kind = SphereImage::Kind::Sphere;
        out.center = t.a + (t.A * (center - t.b)) * t.lambda;
        out.radius = std::abs(t.lambda) * radius;
        return out;
    }

    Vec3 m = center - t.b;
    double dist = norm(m);
    double power = norm_squared(m) - radius * radius;  // power of b w.r.t. the sphere

    if (std::abs(dist - radius) <= 1e-12 * (dist + radius)) {
        // Singularity on the sphere: image is an affine plane (minus a point)
        // through the image of the antipodal axis point, normal along A m.
        out.kind = SphereImage::Kind::Plane;
        out.center = t.a + (t.A * m) * (t.lambda / (dist * (dist + radius)));
        Vec3 n = t.A * (m * (1.0 / dist));
        out.normal = (t.lambda < 0.0) ? -n : n;
        return out;
    }

    // Images of the two axis points c +- r m/||m|| give centre and radius in
    // closed form; valid whether b is inside or outside.
    out.kind = SphereImage::Kind::Sphere;
    out.center = t.a + (t.A * m) * (t.lambda / power);
    out.radius = std::abs(t.lambda) * radius / std::abs(power);
    return out;
}

MoebiusTransform shrink_transform(double t_param) {
    if (t_param == 0.0) throw std::invalid_argument("shrink_transform: t must be nonzero");
    Vec3 fix{t_param, 0.0, 0.0};
    return MoebiusTransform::inversion(fix, t_param * t_param);
}

double predicted_radius(double t_param, const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("predicted_radius: radius must be positive");
    Vec3 d = Vec3{t_param, 0.0, 0.0} - center;
    double power = norm_squared(d) - radius * radius;
    if (!(norm(d) > radius))
        throw std::domain_error("predicted_radius: singularity not outside the sphere");
    return radius * t_param * t_param / power;
}

namespace {

// The four-stage normalization for hub ratio rt = r_a / r_b > 1: shift the
// singularity to the origin, invert, rescale, recentre. Maps (0,0,0) and
// (0,0,2) to themselves and (0,0,-2 rt) to (0,0,-2).
std::vector<MoebiusTransform> hub_ratio_stages(double rt) {
    if (!(rt > 1.0))
        throw std::invalid_argument("hub ratio pipeline requires r_a/r_b > 1 "
                                    "(equal hub radii make it singular)");
    double gamma = 4.0 * rt / (rt - 1.0);
    double scale = -8.0 * rt * (rt + 1.0) / ((rt - 1.0) * (rt - 1.0));
    double shift = 2.0 * (rt + 1.0) / (rt - 1.0);
    return {MoebiusTransform::translation({0, 0, -gamma}),
            MoebiusTransform::inversion({0, 0, 0}, 1.0),
            MoebiusTransform::scaling(scale),
            MoebiusTransform::translation({0, 0, -shift})};
}

Packing transform_packing(const Packing& pk, const MoebiusTransform& t, int stage_index) {
    Packing out = pk;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        SphereImage img = apply_sphere(t, pk.centers[i], pk.radii[i]);
        if (img.kind == SphereImage::Kind::Plane) {
            std::ostringstream os;
            os << "stage " << stage_index << ": sphere '" << pk.labels[i]
               << "' passes through the stage singularity (image is a plane)";
            throw SingularityError(os.str(), stage_index);
        }
        out.centers[i] = img.center;
        out.radii[i] = img.radius;
    }
    return out;
}

double relative_difference(double x, double y) {
    double scale = std::max(std::abs(x), std::abs(y));
    return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

// Distance clearance of a candidate tau=2 singularity from every sphere.
bool clear_of_all_spheres(const Packing& pk, const Vec3& point, double margin) {
    for (std::size_t i = 0; i < pk.size(); ++i)
        if (distance(point, pk.centers[i]) <= (1.0 + margin) * pk.radii[i]) return false;
    return true;
}

double packing_extent(const Packing& pk) {
    double extent = 0.0;
    for (std::size_t i = 0; i < pk.size(); ++i)
        extent = std::max(extent, norm(pk.centers[i]) + pk.radii[i]);
    return extent;
}

}  // namespace

StandardFormResult standard_form(const Packing& pk, const std::string& hub_a,
                                 const std::string& hub_b, const ToleranceProfile& tol) {
    tol.check();
    if (pk.dimension != 3)
        throw std::invalid_argument("standard_form: requires a 3-dimensional packing");

    Graph expected = contact_graph(pk, tol);
    if (!expected.has_edge(hub_a, hub_b))
        throw std::invalid_argument("standard_form: hubs '" + hub_a + "' and '" + hub_b +
                                    "' are not in contact");
    for (const auto& v : pk.labels)
        if (v != hub_a && v != hub_b && (!expected.has_edge(hub_a, v) || !expected.has_edge(hub_b, v)))
            throw std::invalid_argument("standard_form: hub not in contact with vertex '" + v +
                                        "' (contact graph is not G (+) K2 over these hubs)");

    std::vector<MoebiusTransform> stages;
    Packing work = pk;
    auto push = [&](const MoebiusTransform& t) {
        work = transform_packing(work, t, static_cast<int>(stages.size()));
        stages.push_back(t);
    };
    auto pose_stage = [&](const std::string& bottom, const std::string& top) {
        std::size_t ib = work.index_of(bottom), it = work.index_of(top);
        Vec3 pb = work.centers[ib], pt = work.centers[it];
        double gap = distance(pb, pt);
        Mat3 rot = rotation_between((pt - pb) * (1.0 / gap), Vec3{0, 0, 1});
        return MoebiusTransform::rigid(rot, pb, Vec3{0, 0, -work.radii[ib]});
    };
    auto hub_radii = [&]() {
        return std::make_pair(work.radii[work.index_of(hub_a)], work.radii[work.index_of(hub_b)]);
    };

    // Pose with the (currently) larger hub at the bottom.
    {
        auto [ra, rb] = hub_radii();
        push(ra >= rb ? pose_stage(hub_a, hub_b) : pose_stage(hub_b, hub_a));
    }

    // Equal hub radii leave the main pipeline singular. In the normalized
    // pose the shrink map fixes both hub spheres (they pass through the
    // origin, where the hubs touch), so first rotate the tangency plane off
    // the x-axis; then the shrink sees different powers at its singularity
    // and separates the radii.
    if (relative_difference(hub_radii().first, hub_radii().second) <= 1e-6) {
        push(MoebiusTransform::rigid(rotation_about_axis({0, 1, 0}, std::acos(-1.0) / 4.0),
                                     Vec3{}, Vec3{}));
        double t0 = 8.0 * packing_extent(work);
        bool split = false;
        for (int k = 0; k < 300 && !split; ++k) {
            double t = t0 / std::pow(2.0, k);
            if (t == 0.0) break;
            if (!clear_of_all_spheres(work, {t, 0, 0}, 0.5)) continue;
            double na = predicted_radius(t, work.centers[work.index_of(hub_a)],
                                         work.radii[work.index_of(hub_a)]);
            double nb = predicted_radius(t, work.centers[work.index_of(hub_b)],
                                         work.radii[work.index_of(hub_b)]);
            if (relative_difference(na, nb) > 1e-6) {
                push(shrink_transform(t));
                split = true;
            }
        }
        if (!split)
            throw std::invalid_argument(
                "standard_form: hub radii are equal and the shrink search could not "
                "separate them (pipeline singular)");
        auto [ra, rb] = hub_radii();
        push(ra >= rb ? pose_stage(hub_a, hub_b) : pose_stage(hub_b, hub_a));
    }

    // Bottom hub radius r_a > top hub radius r_b > 0; the main pipeline's
    // singularity sits at (0,0,gamma r_b). If any sphere reaches it, shrink
    // the non-hub spheres first (the shrink fixes both hubs in this pose).
    {
        auto [ra0, rb0] = hub_radii();
        double ra = std::max(ra0, rb0), rb = std::min(ra0, rb0);
        double rt = ra / rb;
        Vec3 sigma{0, 0, 4.0 * rt / (rt - 1.0) * rb};
        if (!clear_of_all_spheres(work, sigma, 1e-6)) {
            bool safe = false;
            for (int k = 1; k < 300 && !safe; ++k) {
                double t = rb / std::pow(2.0, k);
                if (t == 0.0) break;
                if (!clear_of_all_spheres(work, {t, 0, 0}, 1e-3)) continue;
                Packing probe = transform_packing(work, shrink_transform(t), -1);
                double pa = probe.radii[probe.index_of(hub_a)];
                double pb = probe.radii[probe.index_of(hub_b)];
                double prt = std::max(pa, pb) / std::min(pa, pb);
                Vec3 psigma{0, 0, 4.0 * prt / (prt - 1.0) * std::min(pa, pb)};
                if (clear_of_all_spheres(probe, psigma, 1e-6)) {
                    push(shrink_transform(t));
                    safe = true;
                }
            }
            if (!safe)
                throw std::invalid_argument(
                    "standard_form: could not move the pipeline singularity clear of the "
                    "packing");
        }
    }

    {
        auto [ra0, rb0] = hub_radii();
        double rb = std::min(ra0, rb0);
        push(MoebiusTransform::scaling(1.0 / rb));
        double rt = std::max(ra0, rb0) / rb;
        for (const auto& stage : hub_ratio_stages(rt)) push(stage);
    }

    // Postconditions: hub spheres at (0,0,-1),(0,0,1) with radius 1, other
    // centres on z = 0, contact graph unchanged.
    {
        auto [ra, rb] = hub_radii();
        if (relative_difference(ra, 1.0) > 1e-6 || relative_difference(rb, 1.0) > 1e-6)
            throw std::runtime_error("standard_form: hub radii failed to normalize to 1");
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (work.labels[i] == hub_a || work.labels[i] == hub_b) continue;
            if (std::abs(work.centers[i].z) >= tol.contact_tol)
                throw std::runtime_error("standard_form: vertex '" + work.labels[i] +
                                         "' did not land on the z = 0 plane");
        }
        Graph after = contact_graph(work, tol);
        if (after != expected) {
            ValidationReport report = validate(work, tol);
            throw ValidationError("standard_form: contact graph changed under the pipeline",
                                  report);
        }
    }

    work.declared_graph = expected;
    return {work, TransformPipeline(stages)};
}

TransformPipeline scale_standard_form(double lambda, double mu) {
    if (!(mu > 0.0) || !(lambda > mu))
        throw std::invalid_argument("scale_standard_form: requires lambda > mu > 0");
    std::vector<MoebiusTransform> stages;
    stages.push_back(MoebiusTransform::scaling(1.0 / mu));
    for (const auto& stage : hub_ratio_stages(lambda / mu)) stages.push_back(stage);
    return TransformPipeline(stages);
}

}  // namespace packrigid
