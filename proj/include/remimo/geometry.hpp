#pragma once

#include <Eigen/Dense>

#include "remimo/errors.hpp"
#include "remimo/rng.hpp"

namespace remimo {

/// Placement of one array: center position plus intrinsic Z-Y-X rotation
/// angles (rad) applied to the local element grid.
struct ArrayPose {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d angles = Eigen::Vector3d::Zero(); // (about z, about y, about x)
};

Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& angles_zyx);

/// m x m uniform square array, n = m^2 elements. Elements live in the local
/// y-z plane (broadside along +x at identity rotation) and are stored in a
/// fixed row-major order over (y, z) grid indices.
class ArrayGeometry {
 public:
  ArrayGeometry(Eigen::Matrix3Xd positions, double spacing, Eigen::Vector3d center);

  int n() const { return static_cast<int>(positions_.cols()); }
  int side() const { return side_; }
  double spacing() const { return spacing_; }
  const Eigen::Matrix3Xd& positions() const { return positions_; }
  const Eigen::Vector3d& center() const { return center_; }
  /// Corner-to-corner extent (m-1) * spacing * sqrt(2).
  double diagonal() const;

 private:
  Eigen::Matrix3Xd positions_;
  double spacing_;
  int side_;
  Eigen::Vector3d center_;
};

ArrayGeometry build_square_array(int n, double spacing_m, const ArrayPose& pose);

/// d_ij = |rx_i - tx_j|, an n_rx x n_tx matrix of exact element distances
/// (no far-field approximation). Throws OverlappingElements when any pair
/// comes closer than min(spacing)/1000.
Eigen::MatrixXd pairwise_distances(const ArrayGeometry& tx, const ArrayGeometry& rx);

/// Three i.i.d. rotation angles uniform on [0, 2 pi).
ArrayPose random_pose(RandomStream& rng, const Eigen::Vector3d& center);

/// True when either array's diagonal exceeds a tenth of the center distance;
/// callers should surface this as a warning (the K-factor derivation assumes
/// arrays small relative to the link distance).
bool near_field_warning(const ArrayGeometry& tx, const ArrayGeometry& rx);

} // namespace remimo
