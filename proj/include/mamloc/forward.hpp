#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "mamloc/localization.hpp"
#include "mamloc/model.hpp"
#include "mamloc/phantom.hpp"

// Forward view prediction (the stand-in for a mesh simulation) and the
// automated layer-factor refinement loop.

namespace mamloc {

// Deterministic map from a 3D SRG nodule to its expected view coordinates.
// Every implementation must send the origin to the CC origin; the factory
// checks this at registration.
class ForwardProjector {
public:
    virtual ~ForwardProjector() = default;
    virtual std::pair<double, double> predict_cc(const Vec3& nodule,
                                                 const BreastMeasurements& m) const = 0;
    virtual complexd predict_mlo(const Vec3& nodule, const BreastMeasurements& m) const = 0;
    virtual std::string name() const = 0;
};

// Virtual-MLO in-plane coordinate: projection onto the w axis (the bisectrix
// y = x for negative x), i.e. w = -(x + y) / sqrt(2).
double mlo_w_axis(const Vec3& nodule);

// Diagonal CC scaling (x, z) -> (H_c x / x_r, H_c z / z_r), the exact inverse
// of mk_nodule_cc, with an optional cross-coupling matrix taken from a
// phantom fit normalized by its compression factor (C / k). The MLO image is
// the w projection scaled by s_w = H_c / mean(x_r, y_r) -- a crude surrogate,
// see README -- with z scaled like the CC z.
class AffineProjector : public ForwardProjector {
public:
    AffineProjector() = default;
    AffineProjector(const AffineFit& fit, const PhantomCompression& compression);

    std::pair<double, double> predict_cc(const Vec3& nodule,
                                         const BreastMeasurements& m) const override;
    complexd predict_mlo(const Vec3& nodule, const BreastMeasurements& m) const override;
    std::string name() const override { return coupling_ ? "affine_coupled" : "affine"; }

private:
    std::optional<Eigen::Matrix3d> coupling_;  // row convention: v' = v * M
};

struct CalibrationPoint {
    double y = 0.0;    // nodule depth y_n along the reference chord
    double x_c = 0.0;  // observed CC coordinates at that depth
    double z_c = 0.0;
};

// CC response linear in y_n along a fixed reference chord (x_ref, z_ref):
//   x_c = (x / x_ref) (alpha_x + beta_x y),  z_c = (z / z_ref) (alpha_z + beta_z y)
// The x/x_ref and z/z_ref factors extend the map off the chord so that the
// origin maps to the origin; on the chord both calibration points are
// reproduced exactly. The MLO side shares AffineProjector's w projection.
// Defaults encode the reference-case pairs (4.94, 2.82) and (5.95, 3.26).
class CalibratedProjector : public ForwardProjector {
public:
    CalibratedProjector();
    CalibratedProjector(const CalibrationPoint& p1, const CalibrationPoint& p2,
                        double x_ref, double z_ref);

    std::pair<double, double> predict_cc(const Vec3& nodule,
                                         const BreastMeasurements& m) const override;
    complexd predict_mlo(const Vec3& nodule, const BreastMeasurements& m) const override;
    std::string name() const override { return "calibrated"; }

    CalibrationPoint point1() const { return p1_; }
    CalibrationPoint point2() const { return p2_; }

private:
    CalibrationPoint p1_, p2_;
    double x_ref_ = 0.0, z_ref_ = 0.0;
    double alpha_x_ = 0.0, beta_x_ = 0.0, alpha_z_ = 0.0, beta_z_ = 0.0;
};

CalibrationPoint default_calibration_point1();
CalibrationPoint default_calibration_point2();
inline constexpr double kDefaultCalibrationXRef = 4.07;
inline constexpr double kDefaultCalibrationZRef = 2.13;

// Builds a projector by name ("affine" | "calibrated") and verifies the
// origin contract. Throws validation_error on an unknown name, numeric_error
// if the projector violates predict_cc(0) = 0.
std::unique_ptr<ForwardProjector> make_projector(const std::string& name);
std::unique_ptr<ForwardProjector> make_calibrated_projector(const CalibrationPoint& p1,
                                                            const CalibrationPoint& p2,
                                                            double x_ref, double z_ref);

// Verifies the registration contract for a caller-supplied implementation.
void check_projector_contract(const ForwardProjector& proj, const BreastMeasurements& m);

// Chord ends at the nodule's height plus their virtual-MLO images.
// Returns nullopt (the "L ~ R" signal consumed by the skin shortcut) when the
// chord is shorter than kDegenerateExtremesCm; throws geometry_error when the
// nodule lies outside the symmetrized breast.
std::optional<ChordExtremes> chord_extremes(double x_n, double z_n,
                                            const BreastMeasurements& m,
                                            const ForwardProjector& proj);

struct ViewPrediction {
    std::pair<double, double> cc;
    complexd mlo;
};

ViewPrediction predict_views(const Vec3& nodule, const BreastMeasurements& m,
                             const ForwardProjector& proj);

// Everything the analytic pass produces for one case. When `shortcut` is set
// the nodule is on the skin and only `target` is meaningful.
struct AnalyticPass {
    double x_n = 0.0, z_n = 0.0;
    double a = 0.0;
    double cos2theta = 0.0;
    std::optional<ChordExtremes> extremes;
    complexd P_virtual;
    RhoResult rho;
    double lf = 0.0;
    bool shortcut = false;
    bool side_ambiguous = false;
    std::optional<NodulePosition> nodule;
    SurgeryTarget target;
};

AnalyticPass analytic_locate(const CaseInputs& c, const BreastMeasurements& m,
                             const ForwardProjector& proj, bool flip_side = false);

struct RefinementResult {
    double lf_final = 0.0;
    double rho_final = 0.0;
    NodulePosition nodule;
    SurgeryTarget target;
    int iterations = 0;
    double cc_residual = 0.0;   // |predicted x_c - observed x_c|, the steering residual
    double mlo_residual = 0.0;  // consistency report only, never steers the loop
    bool converged = false;
    std::string diagnostic;
};

inline constexpr double kDefaultRefineTolCm = 0.05;
inline constexpr int kDefaultRefineMaxIter = 60;
inline constexpr double kRefineLfTol = 1e-4;

// Drives the CC x-residual to zero by bisection on lf over
// [min_layer_factor, 1). The side is fixed by the analytic pass; the MLO
// residual is reported but never steers. Always returns the best iterate;
// a non-bracketing residual comes back with converged = false and a
// diagnostic (it indicates a projector whose CC response is not monotone).
// Throws geometry_error when the analytic pass lands on the skin shortcut.
RefinementResult refine_layer_factor(const CaseInputs& c, const BreastMeasurements& m,
                                     const ForwardProjector& proj,
                                     double tol_cm = kDefaultRefineTolCm,
                                     int max_iter = kDefaultRefineMaxIter,
                                     bool flip_side = false);

// Same loop starting from an already-computed analytic pass.
RefinementResult refine_layer_factor(const AnalyticPass& analytic, const CaseInputs& c,
                                     const BreastMeasurements& m, const ForwardProjector& proj,
                                     double tol_cm = kDefaultRefineTolCm,
                                     int max_iter = kDefaultRefineMaxIter);

}  // namespace mamloc
