#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mamloc/model.hpp"

// Case file format: flat "key = value" text, one pair per line, '#' starts a
// comment, order-insensitive. Numeric values must carry a decimal point.
//
// Required keys: fthrx, brsep, vertical_arc, crc_arc, lat_x, lat_z,
//                xc, zc, pw, pz, bc
// Optional keys: H, projector (affine|calibrated), geodesic
//                (closed_form|numeric), flip_side (yes|no), and the
//                calibration overrides cal_y1, cal_cc1x, cal_cc1z, cal_y2,
//                cal_cc2x, cal_cc2z, cal_xref, cal_zref.
//
// Unknown keys are ignored with a warning so that a machine report (whose
// out.* keys extend this format) can be fed back in as a case file.

namespace mamloc {

struct CaseFile {
    BreastMeasurements measurements;
    CaseInputs inputs;
    std::string projector = "affine";
    bool geodesic_numeric = false;
    bool flip_side = false;

    // Calibrated-projector overrides; unset fields keep the built-in values.
    std::optional<double> cal_y1, cal_cc1x, cal_cc1z;
    std::optional<double> cal_y2, cal_cc2x, cal_cc2z;
    std::optional<double> cal_xref, cal_zref;

    // Verbatim value tokens in input order, echoed into reports.
    std::vector<std::pair<std::string, std::string>> echo;
    std::vector<std::string> warnings;
};

CaseFile parse_case_file(std::istream& in);
CaseFile load_case_file(const std::string& path);

}  // namespace mamloc
