#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dbarlab {

using cplx = std::complex<double>;

// A point in C^2, with the R^4 identification (x1, y1, x2, y2).
struct C2 {
  cplx z1{0.0, 0.0};
  cplx z2{0.0, 0.0};

  static C2 from_r4(const std::array<double, 4>& x) {
    return C2{{x[0], x[1]}, {x[2], x[3]}};
  }
  std::array<double, 4> to_r4() const {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
  }
};

inline C2 operator+(const C2& a, const C2& b) { return {a.z1 + b.z1, a.z2 + b.z2}; }
inline C2 operator-(const C2& a, const C2& b) { return {a.z1 - b.z1, a.z2 - b.z2}; }
inline C2 operator*(double s, const C2& a) { return {s * a.z1, s * a.z2}; }
inline double norm2(const C2& a) { return std::norm(a.z1) + std::norm(a.z2); }
inline double dist(const C2& a, const C2& b) { return std::sqrt(norm2(a - b)); }

using R4 = std::array<double, 4>;

inline R4 operator+(const R4& a, const R4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
inline R4 operator-(const R4& a, const R4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
inline R4 operator*(double s, const R4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
inline double dot(const R4& a, const R4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }
inline double norm(const R4& a) { return std::sqrt(dot(a, a)); }

// Error taxonomy used across the library. Each maps to a CLI exit path.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};
struct out_of_chart_error : error { using error::error; };
struct range_error : error { using error::error; };
struct geometry_error : error { using error::error; };
struct resolution_error : error { using error::error; };
struct data_error : error { using error::error; };
struct precondition_error : error { using error::error; };
struct singularity_error : error { using error::error; };
struct degenerate_point_error : error { using error::error; };
struct unsupported_setting_error : error { using error::error; };
struct config_error : error { using error::error; };

// C2 smoothstep on [0,1]: 0 at 0, 1 at 1, flat ends.
inline double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// Radial cutoff: 0 for u <= 1/2, 1 for u >= 1.
inline double radial_cut(double u) { return smoothstep5(2.0 * (u - 0.5)); }

// \int_0^inf (1 - radial_cut(u)) u du, used by the volume-kernel compensation.
inline constexpr double kRadialCutMoment = 2.0 / 7.0;

// Uniform doubles from raw engine bits; distributions from <random> are not
// bit-reproducible across standard libraries.
template <class Engine>
double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}
template <class Engine>
double uniform(Engine& eng, double a, double b) {
  return a + (b - a) * uniform01(eng);
}

// Deterministic static-partition parallel map over [0, n). Each index writes
// only its own outputs, so results match the serial order bit for bit.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

int hardware_threads();

}  // namespace dbarlab
