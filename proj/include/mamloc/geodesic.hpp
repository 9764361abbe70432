#pragma once

#include "mamloc/geometry.hpp"
#include "mamloc/model.hpp"

// Numeric "virtual tape-measure": geodesic distance from the nipple over the
// true half-ellipsoid, replacing the spherical closed form when requested.

namespace mamloc {

struct EllipsoidSurface {
    double rx = 1.0;
    double ry = 1.0;
    double rz = 1.0;

    Vec3 apex() const { return {0.0, 0.0, rz}; }
};

EllipsoidSurface surface_from_measurements(const BreastMeasurements& m);

struct GeodesicResult {
    double length = 0.0;
    // Set when shooting failed to converge and the planar-section fallback
    // supplied the value.
    bool approximate = false;
};

// Geodesic arc length from the apex (0, 0, rz) to a surface point with
// z >= 0, by shooting: integrate the geodesic ODE from the apex, bisect the
// launch azimuth on the angular miss at the target's polar angle. The target
// must lie on the surface to about 1e-6 relative (geometry_error otherwise,
// and for targets below the equator).
GeodesicResult geodesic_from_nipple(const EllipsoidSurface& s, const Vec3& target,
                                    double rel_tol = 1e-6);

// Surgery coordinates with the numeric tape-measure: the skin point is the
// surface point on the ray from the origin through the nodule, r is the
// geodesic from the nipple to it, d the remaining ray segment, and p keeps
// the planar phase convention of the closed form.
SurgeryTarget surgery_target_numeric(const NodulePosition& n, const EllipsoidSurface& s,
                                     double rel_tol = 1e-6);

}  // namespace mamloc
