#include "mamloc/phantom.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "mamloc/errors.hpp"

namespace mamloc {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    return fields;
}

double parse_field(const std::string& token, int line_no) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != token.size()) {
        std::ostringstream msg;
        msg << "line " << line_no << ": malformed number '" << token << "'";
        throw validation_error(msg.str());
    }
    return value;
}

}  // namespace

TrajectoryDataset load_trajectories(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw validation_error("empty trajectory file");
    ++line_no;
    if (trim(line) != "label,xb,yb,zb,xa,ya,za")
        throw validation_error("line 1: expected header 'label,xb,yb,zb,xa,ya,za'");

    TrajectoryDataset d;
    std::set<char> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 7) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 7 fields, got " << fields.size();
            throw validation_error(msg.str());
        }
        if (fields[0].size() != 1 || !std::isalpha(static_cast<unsigned char>(fields[0][0]))) {
            std::ostringstream msg;
            msg << "line " << line_no << ": label must be a single letter, got '" << fields[0] << "'";
            throw validation_error(msg.str());
        }
        TrajectoryRecord rec;
        rec.label = fields[0][0];
        if (!seen.insert(rec.label).second) {
            std::ostringstream msg;
            msg << "line " << line_no << ": duplicate label '" << rec.label << "'";
            throw validation_error(msg.str());
        }
        rec.before = {parse_field(fields[1], line_no), parse_field(fields[2], line_no),
                      parse_field(fields[3], line_no)};
        rec.after = {parse_field(fields[4], line_no), parse_field(fields[5], line_no),
                     parse_field(fields[6], line_no)};
        d.records.push_back(rec);
    }

    if (d.records.size() < kMinTrajectoryRecords) {
        std::ostringstream msg;
        msg << "need at least " << kMinTrajectoryRecords << " trajectory records, got "
            << d.records.size();
        throw validation_error(msg.str());
    }
    return d;
}

TrajectoryDataset load_trajectories_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open trajectory file: " + path);
    return load_trajectories(in);
}

AffineFit fit_affine(const TrajectoryDataset& d) {
    const auto n = static_cast<Eigen::Index>(d.records.size());
    if (n < static_cast<Eigen::Index>(kMinTrajectoryRecords))
        throw validation_error("fit_affine: dataset below minimum record count");

    Eigen::Matrix<double, Eigen::Dynamic, 3> B(n, 3), A(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& rec = d.records[static_cast<std::size_t>(i)];
        B.row(i) << rec.before.x, rec.before.y + d.plate_offset, rec.before.z;
        A.row(i) << rec.after.x, rec.after.y + d.plate_offset, rec.after.z;
    }

    Eigen::ColPivHouseholderQR<Eigen::Matrix<double, Eigen::Dynamic, 3>> qr(B);
    if (qr.rank() < 3)
        throw numeric_error("fit_affine: singular configuration (before-points are rank deficient)");

    AffineFit fit;
    fit.C = qr.solve(A);
    fit.residuals = A - B * fit.C;

    Eigen::Index row = 0, col = 0;
    fit.max_abs_residual = fit.residuals.cwiseAbs().maxCoeff(&row, &col);
    fit.max_residual_label = d.records[static_cast<std::size_t>(row)].label;
    fit.max_residual_axis = static_cast<int>(col);
    return fit;
}

Vec3 apply_phantom_compression(const Vec3& p, const PhantomCompression& c) {
    return {c.k * p.x, (c.plate_y - p.y) / c.k, c.k * p.z};
}

double diagonal_gap(const AffineFit& f, double k) {
    return (f.C - k * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace mamloc
