#include "mamloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mamloc/errors.hpp"

namespace mamloc {

namespace {

// Radicand excursions this far below zero are rounding noise and clamp to 0;
// anything larger is a genuine domain violation.
constexpr double kRadicandSlack = 1e-12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double checked_sqrt(double radicand, const char* what) {
    if (radicand < -kRadicandSlack) {
        std::ostringstream msg;
        msg << what << ": radicand is negative (" << radicand << ")";
        throw geometry_error(msg.str());
    }
    return std::sqrt(std::max(0.0, radicand));
}

}  // namespace

const char* side_name(Side s) { return s == Side::front ? "front" : "back"; }

std::pair<double, double> mk_nodule_cc(double x_c, double z_c, const BreastMeasurements& m) {
    const double rr = x_c * x_c + z_c * z_c;
    if (rr > m.H_c * m.H_c * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "mk: CC point (" << x_c << ", " << z_c << ") lies outside the contour of radius "
            << m.H_c;
        throw geometry_error(msg.str());
    }
    return {m.x_r * x_c / m.H_c, m.z_r * z_c / m.H_c};
}

double cos2_theta(double x_n, double z_n, double a) {
    if (!(std::abs(z_n) < a))
        throw geometry_error("cos2_theta: nodule height reaches the symmetrized radius");
    const double denom = a * a - z_n * z_n;
    const double value = 1.0 - x_n * x_n / denom;
    if (value < -kRadicandSlack)
        throw geometry_error("cos2_theta: nodule lies outside the symmetrized breast at its height");
    return clamp01(value);
}

double layer_factor(double rho, double h, double a, double cos2theta) {
    const double hh = h / a;
    const double radicand = 1.0 - 4.0 * rho * (1.0 - rho) * (1.0 - hh * hh) * cos2theta;
    return clamp01(checked_sqrt(radicand, "layer_factor"));
}

double min_layer_factor(double h, double a, double cos2theta) {
    return layer_factor(0.5, h, a, cos2theta);
}

RhoResult rho_from_layer_factor(double lf, double h, double a, double cos2theta, Side side) {
    const double hh = h / a;
    const double D = (1.0 - hh * hh) * cos2theta;
    if (D <= 0.0) {
        // lf is pinned to 1 for every rho; only the skin solutions exist.
        if (lf < 1.0 - 1e-9)
            throw geometry_error("rho_from_layer_factor: chord is degenerate, only lf = 1 attainable");
        return {side == Side::front ? 0.0 : 1.0, side};
    }
    const double s = (1.0 - lf * lf) / (4.0 * D);
    const double disc = 1.0 - 4.0 * s;
    if (disc < -kRadicandSlack) {
        std::ostringstream msg;
        msg << "rho_from_layer_factor: lf = " << lf << " is below the attainable minimum "
            << std::sqrt(1.0 - D);
        throw geometry_error(msg.str());
    }
    const double root = std::sqrt(std::max(0.0, disc));
    const double rho = side == Side::front ? (1.0 - root) / 2.0 : (1.0 + root) / 2.0;
    return {clamp01(rho), side};
}

RhoResult rho_from_views(complexd P_virtual, complexd mlo_L, complexd mlo_R) {
    const double span = std::abs(mlo_R - mlo_L);
    if (span < 1e-12)
        throw geometry_error("rho_from_views: coincident extremes (skin-shortcut case)");
    const double rho = clamp01(std::abs(P_virtual - mlo_L) / span);
    return {rho, rho < 0.5 ? Side::front : Side::back};
}

double reconstruct_y(double rho, double x_n, double z_n, double a) {
    const double radicand = a * a - x_n * x_n - z_n * z_n;
    return (1.0 - 2.0 * rho) * checked_sqrt(radicand, "reconstruct_y");
}

NodulePosition make_nodule(double x_n, double z_n, double rho, double a) {
    if (z_n < 0.0) throw geometry_error("nodule must lie in the upper half (z_n >= 0)");
    NodulePosition n;
    n.x_n = x_n;
    n.z_n = z_n;
    n.rho = clamp01(rho);
    n.y_n = reconstruct_y(n.rho, x_n, z_n, a);
    n.lf = n.point().norm() / a;
    return n;
}

SurgeryTarget surgery_target(const NodulePosition& n, double a) {
    const double norm = n.point().norm();
    if (norm <= 0.0)
        throw geometry_error("surgery_target: direction undefined for the zero vector");

    SurgeryTarget t;
    t.method = TargetMethod::closed_form;
    t.r = a * std::acos(std::clamp(n.z_n / norm, -1.0, 1.0));
    if (n.x_n == 0.0 && n.y_n == 0.0) {
        t.p_deg = 0.0;  // under the nipple the phase is undefined; report 0
    } else {
        t.p_deg = to_degrees(std::atan2(n.y_n, n.x_n));
        if (t.p_deg >= 180.0) t.p_deg -= 360.0;
    }
    t.d = a - norm;
    return t;
}

SurgeryTarget skin_shortcut(double x_n, double z_n, double a, Side side) {
    const double c2 = cos2_theta(x_n, z_n, a);
    // Quadrant bookkeeping follows the reference computation for this case:
    // the arccos is taken of the cos^2 value itself and reflected for the
    // back side, reproducing the published -37 deg phase.
    double theta_deg = to_degrees(std::acos(clamp01(c2)));
    if (side == Side::back) theta_deg = 180.0 - theta_deg;

    SurgeryTarget t;
    t.method = TargetMethod::closed_form;
    t.r = a * std::acos(std::clamp(z_n / a, -1.0, 1.0));
    t.p_deg = 90.0 - theta_deg;
    if (t.p_deg >= 180.0) t.p_deg -= 360.0;
    t.d = 0.0;
    return t;
}

}  // namespace mamloc
