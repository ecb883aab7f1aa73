#include "bornscat/scatterer.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bornscat/errors.hpp"

namespace bornscat {

namespace {

void require_symmetric(const Mat3& lambda) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(lambda(i, j) - lambda(j, i)) > 1e-12 * (1.0 + frobenius_norm(lambda)))
        throw ValidationError("coupling tensor lambda must be symmetric");
}

/// (sin x - x cos x) / x^3, series-evaluated below the cancellation threshold.
double ball_form_factor(double x) {
  constexpr double kSwitch = 1e-3;
  if (std::abs(x) < kSwitch) {
    const double x2 = x * x;
    // 1/3 - x^2/30 + x^4/840 - x^6/45360 + x^8/3991680
    return 1.0 / 3.0 +
           x2 * (-1.0 / 30.0 +
                 x2 * (1.0 / 840.0 + x2 * (-1.0 / 45360.0 + x2 * (1.0 / 3991680.0))));
  }
  return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

} // namespace

TwoPointCenters::TwoPointCenters(const Mat3& lambda_, const Vec3& a_) : lambda(lambda_), a(a_) {
  require_symmetric(lambda);
}

Sphere::Sphere(const Mat3& lambda_, double radius_) : lambda(lambda_), radius(radius_) {
  require_symmetric(lambda);
  if (!(radius > 0.0)) throw ValidationError("sphere radius must be positive");
}

NumericGrid::NumericGrid(std::array<int, 3> dims_, Vec3 spacing_, Vec3 origin_,
                         std::vector<double> samples_)
    : dims(dims_), spacing(spacing_), origin(origin_), samples(std::move(samples_)) {
  for (int d = 0; d < 3; ++d) {
    if (dims[static_cast<std::size_t>(d)] <= 0) throw ValidationError("grid dims must be positive");
    if (!(spacing[d] > 0.0)) throw ValidationError("grid spacing must be positive");
  }
  const std::size_t expected = static_cast<std::size_t>(dims[0]) *
                               static_cast<std::size_t>(dims[1]) *
                               static_cast<std::size_t>(dims[2]) * 9u;
  if (samples.size() != expected) throw ValidationError("grid sample count mismatch");
}

std::size_t NumericGrid::voxel_index(int i, int j, int k) const {
  return ((static_cast<std::size_t>(i) * static_cast<std::size_t>(dims[1]) +
           static_cast<std::size_t>(j)) *
              static_cast<std::size_t>(dims[2]) +
          static_cast<std::size_t>(k)) *
         9u;
}

double NumericGrid::component(int i, int j, int k, int u, int v) const {
  return samples[voxel_index(i, j, k) + static_cast<std::size_t>(u * 3 + v)];
}

CMat3 ft_two_points(const TwoPointCenters& model, const Vec3& q) {
  return to_cmat(model.lambda) * (2.0 * std::cos(dot(q, model.a)));
}

CMat3 ft_sphere(const Sphere& model, const Vec3& q) {
  const double x = norm(q) * model.radius;
  const double r3 = model.radius * model.radius * model.radius;
  const double scale = 4.0 * M_PI * r3 * ball_form_factor(x);
  return to_cmat(model.lambda) * scale;
}

CMat3 ft_numeric(const NumericGrid& model, const Vec3& q) {
  if (model.samples.empty()) throw ValidationError("ft_numeric: empty grid");
  const auto& d = model.dims;
  // Trapezoid weights per axis (1/2 at the grid faces).
  auto axis_weight = [](int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  CMat3 acc;
  for (int i = 0; i < d[0]; ++i) {
    const double wx = axis_weight(i, d[0]);
    const double x = model.origin[0] + i * model.spacing[0];
    for (int j = 0; j < d[1]; ++j) {
      const double wy = axis_weight(j, d[1]);
      const double y = model.origin[1] + j * model.spacing[1];
      // Hoist the phase increment along k: e^{i q.r} advances by e^{i qz hz}.
      const double base_phase = q[0] * x + q[1] * y + q[2] * model.origin[2];
      const Complex dphase = std::polar(1.0, q[2] * model.spacing[2]);
      Complex phase = std::polar(1.0, base_phase);
      const std::size_t row = model.voxel_index(i, j, 0);
      for (int k = 0; k < d[2]; ++k) {
        const double w = wx * wy * axis_weight(k, d[2]);
        const Complex f = phase * w;
        const double* s = &model.samples[row + static_cast<std::size_t>(k) * 9u];
        for (int uv = 0; uv < 9; ++uv) acc(uv / 3, uv % 3) += f * s[uv];
        phase *= dphase;
      }
    }
  }
  const double dv = model.spacing[0] * model.spacing[1] * model.spacing[2];
  return acc * dv;
}

CMat3 susceptibility_ft(const ScattererModel& model, const Vec3& q) {
  return std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TwoPointCenters>)
          return ft_two_points(m, q);
        else if constexpr (std::is_same_v<T, Sphere>)
          return ft_sphere(m, q);
        else
          return ft_numeric(m, q);
      },
      model);
}

double born_ratio(const ScattererModel& model, double omega) {
  const double w2 = omega * omega;
  if (const auto* tp = std::get_if<TwoPointCenters>(&model)) {
    const double sep = std::max(norm(tp->a) * 2.0, 1e-300);
    return frobenius_norm(tp->lambda) * w2 / (4.0 * M_PI * sep);
  }
  if (const auto* sp = std::get_if<Sphere>(&model))
    return frobenius_norm(sp->lambda) * w2 * sp->radius * sp->radius / (4.0 * M_PI);
  const auto& g = std::get<NumericGrid>(model);
  double peak = 0.0;
  for (double s : g.samples) peak = std::max(peak, std::abs(s));
  const double extent = std::max({g.dims[0] * g.spacing[0], g.dims[1] * g.spacing[1],
                                  g.dims[2] * g.spacing[2]});
  return peak * w2 * extent * extent / (4.0 * M_PI);
}

NumericGrid make_two_point_grid(const Mat3& lambda, const Vec3& a, double sigma, double step,
                                double half_extent) {
  if (!(sigma > 0.0) || !(step > 0.0) || !(half_extent > 0.0))
    throw ValidationError("make_two_point_grid: widths must be positive");
  const int n = 2 * static_cast<int>(std::ceil(half_extent / step)) + 1;
  const double lo = -step * (n - 1) / 2.0;
  std::vector<double> samples(static_cast<std::size_t>(n) * n * n * 9u, 0.0);
  const double norm3 = std::pow(2.0 * M_PI * sigma * sigma, -1.5);
  NumericGrid grid({n, n, n}, {step, step, step}, {lo, lo, lo}, std::move(samples));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec3 r{lo + i * step, lo + j * step, lo + k * step};
        const Vec3 dp = r - a;
        const Vec3 dm = r + a;
        const double g = norm3 * (std::exp(-0.5 * dot(dp, dp) / (sigma * sigma)) +
                                  std::exp(-0.5 * dot(dm, dm) / (sigma * sigma)));
        if (g == 0.0) continue;
        const std::size_t base = grid.voxel_index(i, j, k);
        for (int u = 0; u < 3; ++u)
          for (int v = 0; v < 3; ++v)
            grid.samples[base + static_cast<std::size_t>(u * 3 + v)] = lambda(u, v) * g;
      }
  return grid;
}

NumericGrid make_sphere_grid(const Mat3& lambda, double radius, double step, double half_extent) {
  if (!(radius > 0.0) || !(step > 0.0) || !(half_extent > 0.0))
    throw ValidationError("make_sphere_grid: sizes must be positive");
  const int n = 2 * static_cast<int>(std::ceil(half_extent / step)) + 1;
  const double lo = -step * (n - 1) / 2.0;
  std::vector<double> samples(static_cast<std::size_t>(n) * n * n * 9u, 0.0);
  NumericGrid grid({n, n, n}, {step, step, step}, {lo, lo, lo}, std::move(samples));
  const int sub = 4; // boundary voxels get a sub-voxel fill fraction
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec3 r{lo + i * step, lo + j * step, lo + k * step};
        const double d = norm(r);
        double fill;
        const double half_diag = 0.87 * step;
        if (d <= radius - half_diag) {
          fill = 1.0;
        } else if (d >= radius + half_diag) {
          fill = 0.0;
        } else {
          int inside = 0;
          for (int a1 = 0; a1 < sub; ++a1)
            for (int a2 = 0; a2 < sub; ++a2)
              for (int a3 = 0; a3 < sub; ++a3) {
                const Vec3 rs{r[0] + (a1 + 0.5) / sub * step - step / 2.0,
                              r[1] + (a2 + 0.5) / sub * step - step / 2.0,
                              r[2] + (a3 + 0.5) / sub * step - step / 2.0};
                if (norm(rs) <= radius) ++inside;
              }
          fill = static_cast<double>(inside) / (sub * sub * sub);
        }
        if (fill == 0.0) continue;
        const std::size_t base = grid.voxel_index(i, j, k);
        for (int u = 0; u < 3; ++u)
          for (int v = 0; v < 3; ++v)
            grid.samples[base + static_cast<std::size_t>(u * 3 + v)] = lambda(u, v) * fill;
      }
  return grid;
}

void save_grid_csv(const NumericGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open grid file for writing: " + path);
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "# bornscat-grid dims=%d,%d,%d spacing=%.17g,%.17g,%.17g origin=%.17g,%.17g,%.17g\n",
                grid.dims[0], grid.dims[1], grid.dims[2], grid.spacing[0], grid.spacing[1],
                grid.spacing[2], grid.origin[0], grid.origin[1], grid.origin[2]);
  out << buf << "# i,j,k,e11,e12,e13,e21,e22,e23,e31,e32,e33\n";
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k) {
        out << i << ',' << j << ',' << k;
        const std::size_t base = grid.voxel_index(i, j, k);
        for (int c = 0; c < 9; ++c) {
          std::snprintf(buf, sizeof buf, ",%.17g", grid.samples[base + static_cast<std::size_t>(c)]);
          out << buf;
        }
        out << '\n';
      }
}

NumericGrid load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open grid file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("grid file is empty: " + path);
  std::array<int, 3> dims{};
  Vec3 spacing, origin;
  if (std::sscanf(line.c_str(),
                  "# bornscat-grid dims=%d,%d,%d spacing=%lf,%lf,%lf origin=%lf,%lf,%lf",
                  &dims[0], &dims[1], &dims[2], &spacing.v[0], &spacing.v[1], &spacing.v[2],
                  &origin.v[0], &origin.v[1], &origin.v[2]) != 9)
    throw ValidationError("grid file has no bornscat-grid header: " + path);
  std::vector<double> samples(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2] * 9u, 0.0);
  NumericGrid grid(dims, spacing, origin, std::move(samples));
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    int i, j, k;
    double c[9];
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &i, &j, &k,
                    &c[0], &c[1], &c[2], &c[3], &c[4], &c[5], &c[6], &c[7], &c[8]) != 12)
      throw ValidationError("malformed grid row: " + line);
    if (i < 0 || i >= dims[0] || j < 0 || j >= dims[1] || k < 0 || k >= dims[2])
      throw ValidationError("grid row out of range: " + line);
    const std::size_t base = grid.voxel_index(i, j, k);
    for (int u = 0; u < 9; ++u) grid.samples[base + static_cast<std::size_t>(u)] = c[u];
    ++rows;
  }
  if (rows == 0) throw ValidationError("grid file holds no voxels: " + path);
  return grid;
}

void save_grid_binary(const NumericGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open grid file for writing: " + path);
  const char magic[8] = {'E', 'P', 'S', 'G', 'R', 'I', 'D', '1'};
  out.write(magic, 8);
  std::int32_t d[3] = {grid.dims[0], grid.dims[1], grid.dims[2]};
  out.write(reinterpret_cast<const char*>(d), sizeof d);
  double geom[6] = {grid.spacing[0], grid.spacing[1], grid.spacing[2],
                    grid.origin[0], grid.origin[1], grid.origin[2]};
  out.write(reinterpret_cast<const char*>(geom), sizeof geom);
  out.write(reinterpret_cast<const char*>(grid.samples.data()),
            static_cast<std::streamsize>(grid.samples.size() * sizeof(double)));
}

NumericGrid load_grid_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open grid file: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "EPSGRID1", 8) != 0)
    throw ValidationError("not a bornscat binary grid: " + path);
  std::int32_t d[3];
  in.read(reinterpret_cast<char*>(d), sizeof d);
  double geom[6];
  in.read(reinterpret_cast<char*>(geom), sizeof geom);
  if (!in) throw ValidationError("truncated grid header: " + path);
  if (d[0] <= 0 || d[1] <= 0 || d[2] <= 0) throw ValidationError("bad grid dims: " + path);
  std::vector<double> samples(static_cast<std::size_t>(d[0]) * d[1] * d[2] * 9u);
  in.read(reinterpret_cast<char*>(samples.data()),
          static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!in) throw ValidationError("truncated grid payload: " + path);
  return NumericGrid({d[0], d[1], d[2]}, {geom[0], geom[1], geom[2]}, {geom[3], geom[4], geom[5]},
                     std::move(samples));
}

} // namespace bornscat
