#pragma once

#include <utility>

#include "mamloc/geometry.hpp"
#include "mamloc/model.hpp"

// Analytic core: view observations -> (lf, rho) -> 3D nodule -> surgery
// coordinates, all on the symmetrized breast (sphere of radius a).

namespace mamloc {

// Which side of the chord the nodule sits on. front means y_n > 0, which by
// the branch convention used everywhere here is rho < 1/2.
enum class Side { front, back };

inline Side flipped(Side s) { return s == Side::front ? Side::back : Side::front; }
const char* side_name(Side s);

struct RhoResult {
    double rho = 0.0;  // in [0, 1]
    Side side = Side::front;
};

// Skin chord ends at the nodule's height (shared x and z, opposite y) and
// their images in the virtual-MLO plane.
struct ChordExtremes {
    Vec3 L;           // front end, y = +sqrt(a^2 - x_n^2 - z_n^2)
    Vec3 R;           // back end
    complexd mlo_L;   // projections supplied by a ForwardProjector
    complexd mlo_R;
};

// lf at or above this is treated as "nodule on the skin".
inline constexpr double kSkinLfThreshold = 0.97;
// Virtual-MLO extremes closer than this collapse to the skin shortcut.
inline constexpr double kDegenerateExtremesCm = 0.5;
// When |rho - 1/2| is below this the side is ambiguous and reports carry
// both candidate targets.
inline constexpr double kSideAmbiguityBand = 0.02;

// CC view -> SRG plane position: (x_n, z_n) = (x_r x_c, z_r z_c) / H_c.
// Throws geometry_error when (x_c, z_c) lies outside the CC contour disk.
std::pair<double, double> mk_nodule_cc(double x_c, double z_c, const BreastMeasurements& m);

// cos^2(theta) = 1 - x_n^2 / (a^2 - z_n^2) for the chord at height z_n.
// Throws geometry_error when the nodule sits outside the symmetrized breast
// at that height (degenerate chord).
double cos2_theta(double x_n, double z_n, double a);

// lf^2 = 1 - 4 rho (1 - rho) [1 - (h/a)^2] cos^2(theta), clamped to [0, 1].
double layer_factor(double rho, double h, double a, double cos2theta);

// Smallest attainable lf for the given chord (rho = 1/2).
double min_layer_factor(double h, double a, double cos2theta);

// Inverts layer_factor for rho; of the two roots rho and 1-rho returns the
// one on the requested side. Throws geometry_error when lf is below the
// attainable minimum (the message reports that minimum).
RhoResult rho_from_layer_factor(double lf, double h, double a, double cos2theta, Side side);

// Chord-length fraction rho = |P - L| / |R - L| in the virtual-MLO plane,
// clamped to [0, 1]; side is front iff rho < 1/2. Throws geometry_error on
// coincident extremes (the caller should have taken the skin shortcut).
RhoResult rho_from_views(complexd P_virtual, complexd mlo_L, complexd mlo_R);

// y_n = (1 - 2 rho) sqrt(a^2 - x_n^2 - z_n^2).
double reconstruct_y(double rho, double x_n, double z_n, double a);

// Bundles reconstruct_y with the lf bookkeeping and validates the result.
NodulePosition make_nodule(double x_n, double z_n, double rho, double a);

// Closed-form surgery coordinates on the symmetrized breast:
//   r = a arccos(z_n / |n|)   (arccos in radians, scaled by a)
//   p = phase of (x_n, y_n) in degrees, sign from y_n, in [-180, 180)
//   d = a - |n|
// Throws geometry_error on the zero vector.
SurgeryTarget surgery_target(const NodulePosition& n, double a);

// Skin-nodule special case (lf ~ 1): d = 0, r = a arccos(z_n / a), and
// p = 90 deg - theta with theta read from cos2_theta's value and the
// quadrant resolved by the MLO side.
SurgeryTarget skin_shortcut(double x_n, double z_n, double a, Side side);

}  // namespace mamloc
