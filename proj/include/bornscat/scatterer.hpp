#pragma once
#include <array>
#include <string>
#include <variant>
#include <vector>

#include "bornscat/linalg.hpp"

namespace bornscat {

/// Two identical point centers at +/- a with symmetric coupling tensor lambda.
/// The momentum-space transform is 2 lambda_ij cos(q.a).
struct TwoPointCenters {
  Mat3 lambda;
  Vec3 a;

  TwoPointCenters(const Mat3& lambda_, const Vec3& a_);
};

/// Homogeneous ball of radius `radius` with coupling tensor lambda.
/// Transform: 4 pi lambda_ij q^-3 (sin(qa) - qa cos(qa)).
struct Sphere {
  Mat3 lambda;
  double radius;

  Sphere(const Mat3& lambda_, double radius_);
};

/// Regular-grid samples of a general susceptibility field, 9 tensor
/// components per voxel in row-major (e11,e12,e13,e21,...,e33) order.
/// Voxel (i,j,k) sits at origin + (i hx, j hy, k hz).
struct NumericGrid {
  std::array<int, 3> dims{0, 0, 0};
  Vec3 spacing{1.0, 1.0, 1.0};
  Vec3 origin{0.0, 0.0, 0.0};
  std::vector<double> samples; ///< dims[0]*dims[1]*dims[2]*9 values

  NumericGrid() = default;
  NumericGrid(std::array<int, 3> dims_, Vec3 spacing_, Vec3 origin_, std::vector<double> samples_);

  std::size_t voxel_index(int i, int j, int k) const;
  double component(int i, int j, int k, int u, int v) const;
};

using ScattererModel = std::variant<TwoPointCenters, Sphere, NumericGrid>;

/// Momentum-space susceptibility, units of volume.
CMat3 ft_two_points(const TwoPointCenters& model, const Vec3& q);
CMat3 ft_sphere(const Sphere& model, const Vec3& q);
CMat3 ft_numeric(const NumericGrid& model, const Vec3& q);
CMat3 susceptibility_ft(const ScattererModel& model, const Vec3& q);

/// Order-of-magnitude estimate of scattered/incident field inside the
/// dielectric; Born's first order is trustworthy when this is << 1.
double born_ratio(const ScattererModel& model, double omega);

/// Rasterization helpers for building NumericGrid fixtures: point centers
/// smoothed by isotropic Gaussians of width sigma, and a hard-edged ball
/// (with subsampled boundary voxels).
NumericGrid make_two_point_grid(const Mat3& lambda, const Vec3& a, double sigma, double step,
                                double half_extent);
NumericGrid make_sphere_grid(const Mat3& lambda, double radius, double step, double half_extent);

/// Voxel-file round trips. The CSV layout is a `# bornscat-grid ...` header
/// carrying dims/spacing/origin followed by one voxel per line (i,j,k,9
/// components); the binary layout is the EPSGRID1 magic, int32 dims,
/// float64 spacing+origin and the raw sample block.
void save_grid_csv(const NumericGrid& grid, const std::string& path);
NumericGrid load_grid_csv(const std::string& path);
void save_grid_binary(const NumericGrid& grid, const std::string& path);
NumericGrid load_grid_binary(const std::string& path);

} // namespace bornscat
