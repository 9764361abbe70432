#include "mamloc/casefile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "mamloc/errors.hpp"

namespace mamloc {

namespace {

const std::vector<std::string> kRequiredKeys = {
    "fthrx", "brsep", "vertical_arc", "crc_arc", "lat_x", "lat_z",
    "xc", "zc", "pw", "pz", "bc"};

const std::set<std::string> kNumericOptional = {
    "H", "cal_y1", "cal_cc1x", "cal_cc1z", "cal_y2", "cal_cc2x", "cal_cc2z",
    "cal_xref", "cal_zref"};

const std::set<std::string> kEnumKeys = {"projector", "geodesic", "flip_side"};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

bool is_numeric_key(const std::string& key) {
    return std::find(kRequiredKeys.begin(), kRequiredKeys.end(), key) != kRequiredKeys.end() ||
           kNumericOptional.count(key) > 0;
}

double parse_number(const std::string& key, const std::string& token, int line_no) {
    if (token.find('.') == std::string::npos) {
        std::ostringstream msg;
        msg << "line " << line_no << ": value for '" << key
            << "' must carry a decimal point, got '" << token << "'";
        throw validation_error(msg.str());
    }
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != token.size()) {
        std::ostringstream msg;
        msg << "line " << line_no << ": malformed number for '" << key << "': '" << token << "'";
        throw validation_error(msg.str());
    }
    return value;
}

}  // namespace

CaseFile parse_case_file(std::istream& in) {
    CaseFile file;
    std::map<std::string, double> numbers;
    std::string line;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 'key = value', got '" << line << "'";
            throw validation_error(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": empty key or value";
            throw validation_error(msg.str());
        }

        if (is_numeric_key(key)) {
            if (numbers.count(key)) {
                std::ostringstream msg;
                msg << "line " << line_no << ": duplicate key '" << key << "'";
                throw validation_error(msg.str());
            }
            numbers[key] = parse_number(key, value, line_no);
            file.echo.emplace_back(key, value);
        } else if (key == "projector") {
            if (value != "affine" && value != "calibrated") {
                std::ostringstream msg;
                msg << "line " << line_no << ": projector must be 'affine' or 'calibrated'";
                throw validation_error(msg.str());
            }
            file.projector = value;
            file.echo.emplace_back(key, value);
        } else if (key == "geodesic") {
            if (value != "numeric" && value != "closed_form") {
                std::ostringstream msg;
                msg << "line " << line_no << ": geodesic must be 'numeric' or 'closed_form'";
                throw validation_error(msg.str());
            }
            file.geodesic_numeric = (value == "numeric");
            file.echo.emplace_back(key, value);
        } else if (key == "flip_side") {
            if (value != "yes" && value != "no") {
                std::ostringstream msg;
                msg << "line " << line_no << ": flip_side must be 'yes' or 'no'";
                throw validation_error(msg.str());
            }
            file.flip_side = (value == "yes");
            file.echo.emplace_back(key, value);
        } else {
            file.warnings.push_back("ignored unknown key '" + key + "'");
        }
    }

    for (const auto& key : kRequiredKeys) {
        if (!numbers.count(key)) throw validation_error("missing key: " + key);
    }

    file.measurements = build_measurements(numbers["fthrx"], numbers["brsep"],
                                           numbers["vertical_arc"], numbers["crc_arc"],
                                           numbers["lat_x"], numbers["lat_z"]);
    file.inputs.x_c = numbers["xc"];
    file.inputs.z_c = numbers["zc"];
    file.inputs.p_w = numbers["pw"];
    file.inputs.p_z = numbers["pz"];
    file.inputs.b_c = numbers["bc"];
    file.inputs.H = numbers.count("H") ? numbers["H"] : 0.0;

    auto opt = [&](const char* key) -> std::optional<double> {
        return numbers.count(key) ? std::optional<double>(numbers[key]) : std::nullopt;
    };
    file.cal_y1 = opt("cal_y1");
    file.cal_cc1x = opt("cal_cc1x");
    file.cal_cc1z = opt("cal_cc1z");
    file.cal_y2 = opt("cal_y2");
    file.cal_cc2x = opt("cal_cc2x");
    file.cal_cc2z = opt("cal_cc2z");
    file.cal_xref = opt("cal_xref");
    file.cal_zref = opt("cal_zref");
    return file;
}

CaseFile load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open case file: " + path);
    return parse_case_file(in);
}

}  // namespace mamloc
