#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "mamloc/geometry.hpp"

// Transparent-phantom nodule trajectories and the affine compression fit.
//
// CSV layout: header "label,xb,yb,zb,xa,ya,za", one single-letter label per
// row, coordinates in the phantom OXYZ frame. The file stores the signed Y;
// grid-paper read-offs are usually written as -Y, so negate them once when
// building the file rather than at every use. The lower-plate shift
// y = Y + plate_offset is applied by fit_affine, not by the loader.

namespace mamloc {

struct TrajectoryRecord {
    char label = '?';
    Vec3 before;
    Vec3 after;
};

struct TrajectoryDataset {
    std::vector<TrajectoryRecord> records;
    double plate_offset = 2.25;  // lower-plate |Y|, phantom-specific
};

// Minimum record count: an affine fit in 3D needs three independent points;
// one extra row keeps the residuals meaningful.
inline constexpr std::size_t kMinTrajectoryRecords = 4;

TrajectoryDataset load_trajectories(std::istream& in);
TrajectoryDataset load_trajectories_file(const std::string& path);

struct AffineFit {
    Eigen::Matrix3d C;                        // row-vector convention: after = before * C
    Eigen::Matrix<double, Eigen::Dynamic, 3> residuals;  // E = A - B C
    double max_abs_residual = 0.0;
    char max_residual_label = '?';
    int max_residual_axis = 0;  // 0 = x, 1 = y, 2 = z
};

// Least-squares fit of A = B C over the shifted before/after coordinates,
// solved by column-pivoted QR. Throws numeric_error when B is rank deficient.
AffineFit fit_affine(const TrajectoryDataset& d);

struct PhantomCompression {
    double k = 1.22;        // in-plane spread factor, > 1
    double plate_y = -2.25; // lower plate height, < 0
};

// The LAT -> CRC compression model: (x, y, z) -> (k x, (plate_y - y) / k, k z).
Vec3 apply_phantom_compression(const Vec3& p, const PhantomCompression& c = {});

// Largest entry of |C - k I|; how far the fitted map strays from a pure scale.
double diagonal_gap(const AffineFit& f, double k = 1.22);

}  // namespace mamloc
