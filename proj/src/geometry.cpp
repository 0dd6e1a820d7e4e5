#include "remimo/geometry.hpp"

#include <cmath>

#include "remimo/constants.hpp"

namespace remimo {

Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& a) {
  return (Eigen::AngleAxisd(a.x(), Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(a.y(), Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(a.z(), Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

ArrayGeometry::ArrayGeometry(Eigen::Matrix3Xd positions, double spacing,
                             Eigen::Vector3d center)
    : positions_(std::move(positions)), spacing_(spacing), center_(std::move(center)) {
  auto n = positions_.cols();
  side_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<long>(side_) * side_ != n)
    throw NotPerfectSquare("ArrayGeometry: element count must be a perfect square");
  if (!(spacing_ > 0.0)) throw NonPositiveSpacing("ArrayGeometry: spacing must be > 0");
}

double ArrayGeometry::diagonal() const {
  return (side_ - 1) * spacing_ * std::sqrt(2.0);
}

ArrayGeometry build_square_array(int n, double spacing_m, const ArrayPose& pose) {
  if (n < 1) throw NotPerfectSquare("build_square_array: n must be >= 1");
  int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (m * m != n)
    throw NotPerfectSquare("build_square_array: n = " + std::to_string(n) +
                           " is not a perfect square");
  if (!(spacing_m > 0.0))
    throw NonPositiveSpacing("build_square_array: spacing must be > 0");

  Eigen::Matrix3d R = rotation_matrix(pose.angles);
  Eigen::Matrix3Xd pos(3, n);
  double half = 0.5 * (m - 1);
  int idx = 0;
  for (int iy = 0; iy < m; ++iy) {
    for (int iz = 0; iz < m; ++iz, ++idx) {
      Eigen::Vector3d local(0.0, (iy - half) * spacing_m, (iz - half) * spacing_m);
      pos.col(idx) = pose.center + R * local;
    }
  }
  return ArrayGeometry(std::move(pos), spacing_m, pose.center);
}

Eigen::MatrixXd pairwise_distances(const ArrayGeometry& tx, const ArrayGeometry& rx) {
  const auto& pt = tx.positions();
  const auto& pr = rx.positions();
  Eigen::MatrixXd d(rx.n(), tx.n());
  double min_allowed = std::min(tx.spacing(), rx.spacing()) / 1000.0;
  for (int i = 0; i < rx.n(); ++i)
    for (int j = 0; j < tx.n(); ++j) {
      double dist = (pr.col(i) - pt.col(j)).norm();
      if (dist < min_allowed)
        throw OverlappingElements("pairwise_distances: rx " + std::to_string(i) +
                                  " and tx " + std::to_string(j) + " nearly coincide");
      d(i, j) = dist;
    }
  return d;
}

ArrayPose random_pose(RandomStream& rng, const Eigen::Vector3d& center) {
  ArrayPose pose;
  pose.center = center;
  for (int i = 0; i < 3; ++i) pose.angles[i] = rng.uniform(0.0, 2.0 * constants::pi);
  return pose;
}

bool near_field_warning(const ArrayGeometry& tx, const ArrayGeometry& rx) {
  double d = (tx.center() - rx.center()).norm();
  return std::max(tx.diagonal(), rx.diagonal()) > d / 10.0;
}

} // namespace remimo
