#pragma once

// Compact sets K inside the strip D = {1/2 < Re s < 1}, target polynomials
// and sampled sup-norm distances.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "lerch/phase.hpp"

namespace lerch {

struct Disk {
  cplx center;
  double radius = 0.0;
};

struct Rectangle {
  cplx corner_lo;
  cplx corner_hi;
};

using Shape = std::variant<Disk, Rectangle>;

/// True when the closure of the shape lies strictly inside D.
bool closure_in_strip(const Shape& shape);
cplx shape_center(const Shape& shape);
/// Largest |z - center| over the closed shape.
double shape_radius(const Shape& shape);
double shape_area(const Shape& shape);
/// Horizontal extent [min Re, max Re] of the closed shape.
std::pair<double, double> shape_extent(const Shape& shape);

/// A compact set with connected complement (disks and axis-aligned
/// rectangles), with the number of boundary and interior samples used for
/// sup-norm estimates.
class CompactSet {
 public:
  static constexpr int kDefaultBoundarySamples = 256;
  static constexpr int kDefaultInteriorSamples = 64;

  /// Throws InvalidArgument when the closure leaves D or the shape is empty.
  explicit CompactSet(Shape shape, int boundary_samples = kDefaultBoundarySamples,
                      int interior_samples = kDefaultInteriorSamples);

  const Shape& shape() const { return shape_; }
  int boundary_samples() const { return boundary_samples_; }
  int interior_samples() const { return interior_samples_; }
  cplx center() const { return shape_center(shape_); }
  double radius() const { return shape_radius(shape_); }

  /// Deterministic samples: boundary points first (disk: equally spaced
  /// angles from 0; rectangle: perimeter walk from corner_lo), then interior
  /// points (disk: center then a sunflower spiral; rectangle: cell centers).
  /// A rectangle with corner_lo == corner_hi yields exactly one point.
  std::vector<cplx> sample_points() const;

  /// Largest distance from a boundary point to its nearest boundary sample.
  /// Multiplying by a bound on |f'| near K turns a sampled sup of an analytic
  /// error into an upper bound (maximum principle).
  double boundary_mesh_width() const;

 private:
  Shape shape_;
  int boundary_samples_;
  int interior_samples_;
};

/// Polynomial sum_k c_k (s - center)^k, degree <= 32.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 32;

  Polynomial() = default;
  Polynomial(std::vector<cplx> coefficients, cplx center);
  static Polynomial constant(cplx c, cplx center = {}) { return Polynomial({c}, center); }

  cplx operator()(cplx s) const;
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  cplx center() const { return center_; }
  bool is_zero() const;
  /// sum_k |c_k| rho^k: upper bound of |p| on |s - center| <= rho.
  double modulus_bound(double rho) const;

 private:
  std::vector<cplx> coefficients_;
  cplx center_{};
};

using TargetPolynomial = Polynomial;

struct SupNormEstimate {
  double value = 0.0;
  cplx argmax_point;
  std::int64_t samples_used = 0;
};

/// max_i |values[i] - target(points[i])|. Throws InvalidArgument on length
/// mismatch or empty input.
SupNormEstimate sup_distance(std::span<const cplx> values, const TargetPolynomial& target,
                             std::span<const cplx> points);

/// Sampled sup inflated by lipschitz_bound * mesh width.
inline double inflated_sup(const SupNormEstimate& est, double lipschitz_bound, double mesh_width) {
  return est.value + lipschitz_bound * mesh_width;
}

}  // namespace lerch
