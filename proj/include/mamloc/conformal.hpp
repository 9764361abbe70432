#pragma once

#include "mamloc/geometry.hpp"

// Conformal automorphism of the disk of radius H used to undo the arm-lift
// distortion of the real MLO image. The one-parameter family
//
//            zeta - b H (b - i) / (1 - i b)
//   f(zeta) = ------------------------------
//            (1 + i b) / (1 - i b) - i b zeta / H
//
// fixes H, sends 0 to i b H, and maps the virtual-MLO half disk onto the
// observed image region. b = 0 gives the identity.

namespace mamloc {

struct MobiusParams {
    double b = 0.0;  // in [0, 1)
    double H = 1.0;  // disk radius, cm
};

// b = b_c / H. Throws validation_error unless 0 <= b_c < H and H > 0.
MobiusParams mobius_param_from_case(double b_c, double H);

// Forward map; throws geometry_error when |zeta| > H (1 + 1e-9).
complexd mobius_forward(complexd zeta, const MobiusParams& m);

// Closed-form inverse (same coefficients, inverted as a 2x2 Moebius matrix);
// throws geometry_error when |w| > H (1 + 1e-9).
complexd mobius_inverse(complexd w, const MobiusParams& m);

}  // namespace mamloc
