#pragma once

// Numerical Bergman-space machinery on a domain U with closure in D:
// area inner products, the transform Delta(z) = iint_U e^{-sz} conj(g(s)),
// norms of v_n(s) = e(lambda n)(n + alpha)^{-s}, the exponential sums
// phi(theta, t), and windowed sums of |sum_j e(lambda_j n) Delta_j(log(n + alpha))|.

#include <cstdint>
#include <span>
#include <vector>

#include "lerch/core.hpp"
#include "lerch/geometry.hpp"

namespace lerch {

struct QuadratureNode {
  cplx point;
  double weight = 0.0;
};

/// Domain U (disk or rectangle, closure strictly inside D) with a tensor
/// quadrature: Gauss-Legendre of order q per axis on rectangles, q radial
/// Gauss-Legendre nodes times 2q equispaced angles on disks.
class BergmanDomain {
 public:
  static constexpr int kDefaultOrder = 48;

  explicit BergmanDomain(Shape shape, int order = kDefaultOrder);

  const Shape& shape() const { return shape_; }
  int order() const { return order_; }
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }
  double area() const { return shape_area(shape_); }
  cplx center() const { return shape_center(shape_); }
  /// Left and right horizontal extremes of U; the tightest strip
  /// sigma_1 < Re s < sigma_2 containing U.
  double sigma1() const { return shape_extent(shape_).first; }
  double sigma2() const { return shape_extent(shape_).second; }
  bool is_rectangle() const { return std::holds_alternative<Rectangle>(shape_); }
  /// Rectangle only: node (a, b) sits at index a * order + b with real part
  /// axis_sigma[a] and imaginary part axis_t[b].
  const std::vector<double>& axis_sigma() const { return axis_sigma_; }
  const std::vector<double>& axis_t() const { return axis_t_; }

 private:
  Shape shape_;
  int order_;
  std::vector<QuadratureNode> nodes_;
  std::vector<double> axis_sigma_, axis_t_;
};

/// Elements of B^2(U) are represented by polynomials in (s - center).
using BergmanElement = Polynomial;

struct TupleElement {
  std::vector<BergmanElement> components;
  std::size_t size() const { return components.size(); }
};

/// <f, g> = iint_U f(s) conj(g(s)) dsigma dt.
cplx inner_product(const BergmanElement& f, const BergmanElement& g, const BergmanDomain& u);
cplx inner_product(const TupleElement& f, const TupleElement& g, const BergmanDomain& u);

class DeltaTransform {
 public:
  DeltaTransform(BergmanElement g, const BergmanDomain& u);

  cplx operator()(cplx z) const;
  const BergmanElement& element() const { return element_; }
  const BergmanDomain& domain() const { return *domain_; }

 private:
  BergmanElement element_;
  const BergmanDomain* domain_;
  std::vector<cplx> weighted_conj_;  // w_i conj(g(s_i))
};

inline cplx delta_transform(const DeltaTransform& d, cplx z) { return d(z); }

/// Explicit constant C = area(U) sup_U |g| e^{sigma_1} with
/// |Delta(t)| <= C e^{-sigma_1 x} for real t in [x, x + 1].
double delta_decay_constant(const BergmanElement& g, const BergmanDomain& u);

/// iint_U |(n + alpha)^{-s}|^2 dsigma dt (independent of lambda).
double vn_norm_sq(std::int64_t n, LerchParameters p, const BergmanDomain& u);

/// sum_{n=0}^{floor t} e(theta n) in closed form. Rejects integer theta and t < 0.
cplx phi_pair_sum(double theta, double t);

struct WindowedSums {
  double s1 = 0.0;          // sum* sum_j |Delta_j|^2
  cplx s2;                  // sum* sum_{k != l} e((lambda_k - lambda_l) n) Delta_k conj(Delta_l)
  double s = 0.0;           // sum* |sum_j e(lambda_j n) Delta_j|
  double s_sq = 0.0;        // sum* |sum_j e(lambda_j n) Delta_j|^2
  std::int64_t n_first = 0;
  std::int64_t n_last = -1;
  double identity_residual = 0.0;  // |s_sq - s1 - s2| / s_sq
  std::int64_t count() const { return n_last - n_first + 1; }
};

struct WindowSpec {
  int exponent = 1;   // the window is [e^x, e^{x + scale * x^{-2 exponent}}]
  double scale = 1.0;
};

/// Windowed sums over integers n with n + alpha in [e^x, e^{x + B x^{-2m}}].
/// Requires equal alpha, pairwise distinct lambda, e^x <= 1e8. Throws
/// EmptyWindowError when no integer falls in the window.
WindowedSums windowed_sums(const TupleElement& g, std::span<const LerchParameters> params,
                           const BergmanDomain& u, double x, WindowSpec window, int threads = 1);

struct DivergenceRow {
  double x = 0.0;
  double s = 0.0;
  double s1 = 0.0;
  double abs_s2 = 0.0;
  double envelope = 0.0;  // e^{x(1 - sigma_2)} / x^{2m}
  double cum_sum = 0.0;   // sum_{n <= n_end} |<v_n, g>|
  std::int64_t n_end = 0;
};

std::vector<DivergenceRow> divergence_diagnostic(const TupleElement& g,
                                                 std::span<const LerchParameters> params,
                                                 const BergmanDomain& u,
                                                 std::span<const double> x_grid, WindowSpec window,
                                                 int threads = 1);

}  // namespace lerch
