#include "mamloc/conformal.hpp"

#include <sstream>

#include "mamloc/errors.hpp"

namespace mamloc {

namespace {

constexpr double kDiskSlack = 1e-9;

// Moebius coefficients of f(zeta) = (zeta + b1) / (c1 zeta + d1).
struct Coefficients {
    complexd b1, c1, d1;
};

Coefficients coefficients(const MobiusParams& m) {
    const complexd i(0.0, 1.0);
    const complexd ib = i * m.b;
    Coefficients c;
    c.b1 = -m.b * m.H * (m.b - i) / (1.0 - ib);
    c.c1 = -ib / m.H;
    c.d1 = (1.0 + ib) / (1.0 - ib);
    return c;
}

void check_in_disk(complexd z, double H, const char* what) {
    if (std::abs(z) > H * (1.0 + kDiskSlack)) {
        std::ostringstream msg;
        msg << what << " lies outside the disk of radius " << H << ": |" << z.real() << " + "
            << z.imag() << "i| = " << std::abs(z);
        throw geometry_error(msg.str());
    }
}

}  // namespace

MobiusParams mobius_param_from_case(double b_c, double H) {
    if (!(H > 0.0)) throw validation_error("mobius: disk radius H must be positive");
    if (b_c < 0.0 || b_c >= H)
        throw validation_error("mobius: muscle height b_c must satisfy 0 <= b_c < H");
    return {b_c / H, H};
}

complexd mobius_forward(complexd zeta, const MobiusParams& m) {
    check_in_disk(zeta, m.H, "mobius_forward input");
    const auto c = coefficients(m);
    return (zeta + c.b1) / (c.c1 * zeta + c.d1);
}

complexd mobius_inverse(complexd w, const MobiusParams& m) {
    check_in_disk(w, m.H, "mobius_inverse input");
    const auto c = coefficients(m);
    return (c.d1 * w - c.b1) / (1.0 - c.c1 * w);
}

}  // namespace mamloc
