#pragma once
#include <array>
#include <cmath>
#include <complex>

namespace bornscat {

using Complex = std::complex<double>;

/// Small fixed-size real 3-vector.
struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double x, double y, double z) : v{x, y, z} {}

  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

  Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
  Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
  Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
  Vec3 operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
};

inline Vec3 operator*(double s, const Vec3& a) { return a * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Complex 3-vector (field amplitudes).
struct CVec3 {
  std::array<Complex, 3> v{};

  CVec3() = default;
  CVec3(Complex x, Complex y, Complex z) : v{x, y, z} {}
  explicit CVec3(const Vec3& r) : v{Complex(r[0]), Complex(r[1]), Complex(r[2])} {}

  Complex operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  Complex& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

  CVec3 operator+(const CVec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
  CVec3& operator+=(const CVec3& o) {
    v[0] += o.v[0];
    v[1] += o.v[1];
    v[2] += o.v[2];
    return *this;
  }
  CVec3 operator*(Complex s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
  CVec3 operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
};

inline CVec3 operator*(Complex s, const CVec3& a) { return a * s; }
inline CVec3 conj(const CVec3& a) {
  return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}
/// Unconjugated contraction a_i b_i.
inline Complex contract(const CVec3& a, const CVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const CVec3& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

/// Real 3x3 matrix.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  double operator()(int i, int j) const {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  double& operator()(int i, int j) {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
  }
};

inline Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return r;
}
inline CVec3 operator*(const Mat3& a, const CVec3& x) {
  CVec3 r;
  for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return r;
}
inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}
inline double frobenius_norm(const Mat3& a) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

/// Complex 3x3 matrix (susceptibility transforms, polarization tensors).
struct CMat3 {
  std::array<std::array<Complex, 3>, 3> m{};

  Complex operator()(int i, int j) const {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Complex& operator()(int i, int j) {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  CMat3 operator+(const CMat3& o) const {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
  }
  CMat3 operator*(Complex s) const {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
  }
  CMat3 operator*(double s) const { return (*this) * Complex(s); }
};

inline CMat3 to_cmat(const Mat3& a) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = Complex(a(i, j));
  return r;
}
inline CVec3 operator*(const CMat3& a, const CVec3& x) {
  CVec3 r;
  for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return r;
}
inline CVec3 operator*(const CMat3& a, const Vec3& x) { return a * CVec3(x); }
inline CMat3 operator*(const CMat3& a, const CMat3& b) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex s = 0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}
inline CMat3 operator*(const Mat3& a, const CMat3& b) { return to_cmat(a) * b; }
inline CMat3 operator*(const CMat3& a, const Mat3& b) { return a * to_cmat(b); }
inline CMat3 transpose(const CMat3& a) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}
inline CMat3 conj(const CMat3& a) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = std::conj(a(i, j));
  return r;
}
inline double max_abs(const CMat3& a) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s = std::max(s, std::abs(a(i, j)));
  return s;
}

} // namespace bornscat
