#pragma once

#include <optional>
#include <string>

#include "mamloc/casefile.hpp"
#include "mamloc/forward.hpp"

// End-to-end case processing and report rendering for the CLI.

namespace mamloc {

struct LocateOptions {
    std::string projector_override;  // empty: take the case file's choice
    bool flip_side = false;          // OR-ed with the case file's flag
    bool geodesic_numeric = false;   // OR-ed with the case file's flag
    bool refine = true;
    double tol_cm = kDefaultRefineTolCm;
    int max_iter = kDefaultRefineMaxIter;
};

struct CaseReport {
    CaseFile file;
    std::string projector;
    bool geodesic_numeric = false;
    bool flip_side = false;

    BreastMeasurements measurements;
    double a = 0.0;
    AnalyticPass analytic;
    std::optional<RefinementResult> refinement;
    std::optional<SurgeryTarget> alternate;  // mirrored side when rho ~ 1/2
    std::vector<std::string> warnings;
};

CaseReport run_case(const CaseFile& file, const LocateOptions& options = {});

// Line-oriented "key = value" block: verbatim input echo first (itself a
// valid case file), then out.* keys in a fixed order, then warn.N lines.
std::string render_machine(const CaseReport& report);

// Stage-by-stage report labelled with the simulator command names
// (coors / mk / mlo / frho / cnt). Angles print with 3 decimals, lengths 4.
std::string render_human(const CaseReport& report);

std::string render_phantom_human(const AffineFit& fit, const TrajectoryDataset& d);
std::string render_phantom_machine(const AffineFit& fit);

}  // namespace mamloc
