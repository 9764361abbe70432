#include "mamloc/forward.hpp"

#include <cmath>
#include <sstream>

#include "mamloc/conformal.hpp"
#include "mamloc/errors.hpp"

namespace mamloc {

namespace {

double mlo_w_scale(const BreastMeasurements& m) { return m.H_c / ((m.x_r + m.y_r) / 2.0); }

complexd affine_mlo(const Vec3& nodule, const BreastMeasurements& m) {
    return {mlo_w_scale(m) * mlo_w_axis(nodule), m.H_c / m.z_r * nodule.z};
}

}  // namespace

double mlo_w_axis(const Vec3& nodule) { return -(nodule.x + nodule.y) / std::sqrt(2.0); }

AffineProjector::AffineProjector(const AffineFit& fit, const PhantomCompression& compression) {
    coupling_ = fit.C / compression.k;
}

std::pair<double, double> AffineProjector::predict_cc(const Vec3& nodule,
                                                      const BreastMeasurements& m) const {
    Vec3 n = nodule;
    if (coupling_) {
        const auto& M = *coupling_;
        n = {nodule.x * M(0, 0) + nodule.y * M(1, 0) + nodule.z * M(2, 0),
             nodule.x * M(0, 1) + nodule.y * M(1, 1) + nodule.z * M(2, 1),
             nodule.x * M(0, 2) + nodule.y * M(1, 2) + nodule.z * M(2, 2)};
    }
    return {m.H_c / m.x_r * n.x, m.H_c / m.z_r * n.z};
}

complexd AffineProjector::predict_mlo(const Vec3& nodule, const BreastMeasurements& m) const {
    return affine_mlo(nodule, m);
}

CalibrationPoint default_calibration_point1() { return {1.81015400703918, 4.94, 2.82}; }
CalibrationPoint default_calibration_point2() { return {2.96746558531013, 5.95, 3.26}; }

CalibratedProjector::CalibratedProjector()
    : CalibratedProjector(default_calibration_point1(), default_calibration_point2(),
                          kDefaultCalibrationXRef, kDefaultCalibrationZRef) {}

CalibratedProjector::CalibratedProjector(const CalibrationPoint& p1, const CalibrationPoint& p2,
                                         double x_ref, double z_ref)
    : p1_(p1), p2_(p2), x_ref_(x_ref), z_ref_(z_ref) {
    if (!(x_ref > 0.0) || !(z_ref > 0.0))
        throw validation_error("calibrated projector: reference chord must have positive x and z");
    const double dy = p2.y - p1.y;
    if (std::abs(dy) < 1e-12)
        throw validation_error("calibrated projector: calibration depths must differ");
    beta_x_ = (p2.x_c - p1.x_c) / dy;
    alpha_x_ = p1.x_c - beta_x_ * p1.y;
    beta_z_ = (p2.z_c - p1.z_c) / dy;
    alpha_z_ = p1.z_c - beta_z_ * p1.y;
}

std::pair<double, double> CalibratedProjector::predict_cc(const Vec3& nodule,
                                                          const BreastMeasurements&) const {
    return {nodule.x / x_ref_ * (alpha_x_ + beta_x_ * nodule.y),
            nodule.z / z_ref_ * (alpha_z_ + beta_z_ * nodule.y)};
}

complexd CalibratedProjector::predict_mlo(const Vec3& nodule, const BreastMeasurements& m) const {
    return affine_mlo(nodule, m);
}

void check_projector_contract(const ForwardProjector& proj, const BreastMeasurements& m) {
    const auto origin = proj.predict_cc({0.0, 0.0, 0.0}, m);
    if (std::abs(origin.first) > 1e-12 || std::abs(origin.second) > 1e-12) {
        std::ostringstream msg;
        msg << "projector '" << proj.name() << "' violates predict_cc(origin) = origin: got ("
            << origin.first << ", " << origin.second << ")";
        throw numeric_error(msg.str());
    }
}

namespace {

std::unique_ptr<ForwardProjector> checked(std::unique_ptr<ForwardProjector> proj) {
    // Registration contract check with a neutral unit-ish measurement set.
    BreastMeasurements probe;
    probe.x_r = probe.y_r = probe.z_r = 1.0;
    probe.H_c = 1.0;
    probe.lat_x = probe.lat_z = 1.0;
    check_projector_contract(*proj, probe);
    return proj;
}

}  // namespace

std::unique_ptr<ForwardProjector> make_projector(const std::string& name) {
    if (name == "affine") return checked(std::make_unique<AffineProjector>());
    if (name == "calibrated") return checked(std::make_unique<CalibratedProjector>());
    throw validation_error("unknown projector '" + name + "' (expected affine or calibrated)");
}

std::unique_ptr<ForwardProjector> make_calibrated_projector(const CalibrationPoint& p1,
                                                            const CalibrationPoint& p2,
                                                            double x_ref, double z_ref) {
    return checked(std::make_unique<CalibratedProjector>(p1, p2, x_ref, z_ref));
}

std::optional<ChordExtremes> chord_extremes(double x_n, double z_n,
                                            const BreastMeasurements& m,
                                            const ForwardProjector& proj) {
    const double a = mean_radius(m);
    const double radicand = a * a - x_n * x_n - z_n * z_n;
    if (radicand < -1e-12)
        throw geometry_error("chord_extremes: nodule lies outside the symmetrized breast");

    const double half = std::sqrt(std::max(0.0, radicand));
    // A 3D chord shorter than the degenerate threshold is the L ~ R case.
    if (2.0 * half <= kDegenerateExtremesCm) return std::nullopt;

    ChordExtremes e;
    e.L = {x_n, half, z_n};
    e.R = {x_n, -half, z_n};
    e.mlo_L = proj.predict_mlo(e.L, m);
    e.mlo_R = proj.predict_mlo(e.R, m);
    return e;
}

ViewPrediction predict_views(const Vec3& nodule, const BreastMeasurements& m,
                             const ForwardProjector& proj) {
    return {proj.predict_cc(nodule, m), proj.predict_mlo(nodule, m)};
}

AnalyticPass analytic_locate(const CaseInputs& c, const BreastMeasurements& m,
                             const ForwardProjector& proj, bool flip_side) {
    AnalyticPass pass;
    pass.a = mean_radius(m);
    auto [x_n, z_n] = mk_nodule_cc(c.x_c, c.z_c, m);
    pass.x_n = x_n;
    pass.z_n = z_n;
    pass.cos2theta = cos2_theta(x_n, z_n, pass.a);
    pass.extremes = chord_extremes(x_n, z_n, m, proj);

    const double H = mlo_radius(c, m);
    const auto mobius = mobius_param_from_case(c.b_c, H);
    pass.P_virtual = mobius_inverse({c.p_w, c.p_z}, mobius);

    if (!pass.extremes ||
        std::abs(pass.extremes->mlo_R - pass.extremes->mlo_L) <= kDegenerateExtremesCm) {
        // Fig.-17 style degenerate chord: the nodule is effectively on the
        // skin and the MLO view carries no usable depth information.
        pass.shortcut = true;
        pass.side_ambiguous = true;
        Side side = flip_side ? Side::back : Side::front;
        pass.rho = {side == Side::front ? 0.0 : 1.0, side};
        pass.lf = 1.0;
        pass.target = skin_shortcut(x_n, z_n, pass.a, side);
        return pass;
    }

    pass.rho = rho_from_views(pass.P_virtual, pass.extremes->mlo_L, pass.extremes->mlo_R);
    if (flip_side) {
        pass.rho.rho = 1.0 - pass.rho.rho;
        pass.rho.side = flipped(pass.rho.side);
    }
    pass.side_ambiguous = std::abs(pass.rho.rho - 0.5) < kSideAmbiguityBand;
    pass.lf = layer_factor(pass.rho.rho, z_n, pass.a, pass.cos2theta);

    if (pass.lf >= kSkinLfThreshold) {
        pass.shortcut = true;
        pass.target = skin_shortcut(x_n, z_n, pass.a, pass.rho.side);
        return pass;
    }

    pass.nodule = make_nodule(x_n, z_n, pass.rho.rho, pass.a);
    pass.target = surgery_target(*pass.nodule, pass.a);
    return pass;
}

RefinementResult refine_layer_factor(const CaseInputs& c, const BreastMeasurements& m,
                                     const ForwardProjector& proj, double tol_cm, int max_iter,
                                     bool flip_side) {
    return refine_layer_factor(analytic_locate(c, m, proj, flip_side), c, m, proj, tol_cm,
                               max_iter);
}

RefinementResult refine_layer_factor(const AnalyticPass& analytic, const CaseInputs& c,
                                     const BreastMeasurements& m, const ForwardProjector& proj,
                                     double tol_cm, int max_iter) {
    if (analytic.shortcut)
        throw geometry_error("refine_layer_factor: undefined on the skin-shortcut path");
    if (!(tol_cm > 0.0)) throw validation_error("refine_layer_factor: tol_cm must be positive");

    const double a = analytic.a;
    const double x_n = analytic.x_n;
    const double z_n = analytic.z_n;
    const Side side = analytic.rho.side;

    struct Iterate {
        double lf, rho, y, residual;
    };
    auto evaluate = [&](double lf) -> Iterate {
        const auto rho = rho_from_layer_factor(lf, z_n, a, analytic.cos2theta, side);
        const double y = reconstruct_y(rho.rho, x_n, z_n, a);
        const double predicted = proj.predict_cc({x_n, y, z_n}, m).first;
        return {lf, rho.rho, y, predicted - c.x_c};
    };

    RefinementResult result;
    Iterate best = evaluate(analytic.lf);
    int iterations = 0;

    const double lf_lo_bound = min_layer_factor(z_n, a, analytic.cos2theta);
    const double lf_hi_bound = 1.0 - 1e-9;

    if (std::abs(best.residual) > tol_cm) {
        Iterate lo = evaluate(lf_lo_bound);
        Iterate hi = evaluate(lf_hi_bound);
        for (const auto& it : {lo, hi})
            if (std::abs(it.residual) < std::abs(best.residual)) best = it;

        if (lo.residual * hi.residual > 0.0) {
            result.diagnostic =
                "CC residual does not change sign over [lf_min, 1); the projector's response "
                "is not usable for bisection";
        } else {
            // The analytic iterate splits the bracket when its sign is known.
            if (lo.residual * best.residual <= 0.0 && best.lf > lo.lf)
                hi = best;
            else if (best.residual * hi.residual <= 0.0 && best.lf < hi.lf)
                lo = best;
            while (iterations < max_iter && hi.lf - lo.lf > kRefineLfTol) {
                Iterate mid = evaluate((lo.lf + hi.lf) / 2.0);
                ++iterations;
                if (std::abs(mid.residual) < std::abs(best.residual)) best = mid;
                if (std::abs(mid.residual) <= tol_cm) break;
                if (lo.residual * mid.residual <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
        }
    }

    result.lf_final = best.lf;
    result.rho_final = best.rho;
    result.iterations = iterations;
    result.cc_residual = std::abs(best.residual);
    result.converged = result.cc_residual <= tol_cm && result.diagnostic.empty();
    result.nodule = make_nodule(x_n, z_n, best.rho, a);
    result.target = surgery_target(result.nodule, a);
    result.mlo_residual = std::abs(proj.predict_mlo(result.nodule.point(), m) - analytic.P_virtual);
    return result;
}

}  // namespace mamloc
