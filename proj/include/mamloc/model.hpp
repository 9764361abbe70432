#pragma once

#include <string>
#include <vector>

#include "mamloc/geometry.hpp"

// Measurement inputs, coordinate frames and the symmetrized breast model.
//
// All lengths are centimetres (cgs units throughout the library). The SRG
// frame has its origin at the breast-base centre, Oz vertical with the
// nipple at (0, 0, z_r), Oy sagittal and Ox lateral. Everything here is an
// immutable value object once built; nothing mutates after construction.

namespace mamloc {

struct BreastMeasurements {
    double x_r = 0.0;    // SRG half-width radius
    double y_r = 0.0;    // SRG sagittal radius
    double z_r = 0.0;    // SRG vertical radius
    double H_c = 0.0;    // CRC characteristic radius (horizontal CRC arc / pi)
    double lat_x = 0.0;  // x extent at LAT (recorded, not used downstream)
    double lat_z = 0.0;  // z extent at LAT
};

// Derives the SRG radii from tape measurements:
//   x_r = (fthrx - brsep) / 4,  y_r = z_r = vertical_arc / pi,  H_c = crc_arc / pi
// Throws validation_error naming the offending field on non-positive or
// inconsistent inputs.
BreastMeasurements build_measurements(double fthrx, double brsep, double vertical_arc,
                                      double crc_arc, double lat_x, double lat_z);

// Arithmetic mean of the three SRG radii.
double mean_radius(const BreastMeasurements& m);

// Pairwise radii spread, (max - min) / max.
double radii_disparity(const BreastMeasurements& m);

// Disparity above this is reported as a warning, never an error.
inline constexpr double kRadiiDisparityWarn = 0.11;

// Soft-invariant checks (radii disparity, H_c smaller than a radius).
// Returned as human-readable warnings; none of these reject the input.
std::vector<std::string> measurement_warnings(const BreastMeasurements& m);

struct SymmetrizedBreast {
    double a = 0.0;  // mean radius, the sphere used by the closed-form math
    Vec3 nipple;     // (0, 0, z_r) in the SRG frame
};

SymmetrizedBreast symmetrize(const BreastMeasurements& m);

struct CaseInputs {
    double x_c = 0.0;  // observed nodule x in the CC view (CRC frame)
    double z_c = 0.0;  // observed nodule z in the CC view
    double p_w = 0.0;  // observed nodule w in the real-MLO view
    double p_z = 0.0;  // observed nodule z in the real-MLO view
    double b_c = 0.0;  // height at which Oz transposes the pectoralis muscle
    double H = 0.0;    // MLO image characteristic radius; 0 means "use H_c"
};

// Resolves the MLO disk radius (H if set, else H_c) and validates 0 <= b_c < H.
double mlo_radius(const CaseInputs& c, const BreastMeasurements& m);

struct NodulePosition {
    double x_n = 0.0;
    double y_n = 0.0;
    double z_n = 0.0;
    double lf = 0.0;   // |OP| / a, in [0, 1)
    double rho = 0.0;  // chord fraction, in [0, 1]

    Vec3 point() const { return {x_n, y_n, z_n}; }
};

enum class TargetMethod { closed_form, geodesic_numeric };

struct SurgeryTarget {
    double r = 0.0;      // geodesic radius from the nipple, cm
    double p_deg = 0.0;  // phase angle, degrees in [-180, 180)
    double d = 0.0;      // cut depth, cm
    TargetMethod method = TargetMethod::closed_form;
};

const char* target_method_name(TargetMethod m);

}  // namespace mamloc
