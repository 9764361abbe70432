#include "mamloc/model.hpp"

#include <algorithm>
#include <sstream>

#include "mamloc/errors.hpp"

namespace mamloc {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "measurement '" << field << "' must be positive, got " << v;
        throw validation_error(msg.str());
    }
}

}  // namespace

BreastMeasurements build_measurements(double fthrx, double brsep, double vertical_arc,
                                      double crc_arc, double lat_x, double lat_z) {
    require_positive(fthrx, "fthrx");
    require_positive(brsep, "brsep");
    require_positive(vertical_arc, "vertical_arc");
    require_positive(crc_arc, "crc_arc");
    require_positive(lat_x, "lat_x");
    require_positive(lat_z, "lat_z");
    if (!(fthrx > brsep))
        throw validation_error("measurement 'fthrx' must exceed 'brsep' (zero breast radius)");

    BreastMeasurements m;
    m.x_r = (fthrx - brsep) / 4.0;
    m.y_r = vertical_arc / kPi;
    m.z_r = m.y_r;
    m.H_c = crc_arc / kPi;
    m.lat_x = lat_x;
    m.lat_z = lat_z;
    return m;
}

double mean_radius(const BreastMeasurements& m) {
    if (!(m.x_r > 0.0 && m.y_r > 0.0 && m.z_r > 0.0))
        throw validation_error("mean_radius: radii must be positive");
    return (m.x_r + m.y_r + m.z_r) / 3.0;
}

double radii_disparity(const BreastMeasurements& m) {
    const double hi = std::max({m.x_r, m.y_r, m.z_r});
    const double lo = std::min({m.x_r, m.y_r, m.z_r});
    return (hi - lo) / hi;
}

std::vector<std::string> measurement_warnings(const BreastMeasurements& m) {
    std::vector<std::string> warnings;
    const double disparity = radii_disparity(m);
    if (disparity > kRadiiDisparityWarn) {
        std::ostringstream msg;
        msg << "SRG radii differ by " << static_cast<int>(disparity * 100.0 + 0.5)
            << "%; the symmetrized sphere is a coarse approximation";
        warnings.push_back(msg.str());
    }
    if (m.H_c < std::max(m.x_r, m.z_r))
        warnings.push_back("H_c is smaller than an SRG radius; compression normally spreads the breast");
    return warnings;
}

SymmetrizedBreast symmetrize(const BreastMeasurements& m) {
    return {mean_radius(m), Vec3{0.0, 0.0, m.z_r}};
}

double mlo_radius(const CaseInputs& c, const BreastMeasurements& m) {
    const double H = c.H > 0.0 ? c.H : m.H_c;
    if (!(H > 0.0)) throw validation_error("MLO radius 'H' must be positive");
    if (c.b_c < 0.0 || c.b_c >= H)
        throw validation_error("'bc' must satisfy 0 <= bc < H");
    return H;
}

const char* target_method_name(TargetMethod m) {
    return m == TargetMethod::closed_form ? "closed_form" : "geodesic_numeric";
}

}  // namespace mamloc
