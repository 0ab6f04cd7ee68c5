#include "lerch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lerch/error.hpp"

namespace lerch {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool closure_in_strip(const Shape& shape) {
  const auto [lo, hi] = shape_extent(shape);
  return lo > 0.5 && hi < 1.0;
}

std::pair<double, double> shape_extent(const Shape& shape) {
  return std::visit(Overloaded{
                        [](const Disk& d) {
                          return std::pair{d.center.real() - d.radius, d.center.real() + d.radius};
                        },
                        [](const Rectangle& r) {
                          return std::pair{r.corner_lo.real(), r.corner_hi.real()};
                        }},
                    shape);
}

cplx shape_center(const Shape& shape) {
  return std::visit(Overloaded{[](const Disk& d) { return d.center; },
                               [](const Rectangle& r) { return 0.5 * (r.corner_lo + r.corner_hi); }},
                    shape);
}

double shape_radius(const Shape& shape) {
  return std::visit(Overloaded{[](const Disk& d) { return d.radius; },
                               [](const Rectangle& r) { return 0.5 * std::abs(r.corner_hi - r.corner_lo); }},
                    shape);
}

double shape_area(const Shape& shape) {
  return std::visit(Overloaded{[](const Disk& d) { return std::numbers::pi * d.radius * d.radius; },
                               [](const Rectangle& r) {
                                 const cplx d = r.corner_hi - r.corner_lo;
                                 return d.real() * d.imag();
                               }},
                    shape);
}

CompactSet::CompactSet(Shape shape, int boundary_samples, int interior_samples)
    : shape_(std::move(shape)),
      boundary_samples_(boundary_samples),
      interior_samples_(interior_samples) {
  if (boundary_samples_ < 1 || interior_samples_ < 0) {
    throw InvalidArgument("sample counts must be boundary >= 1, interior >= 0");
  }
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    if (!(d->radius > 0.0)) throw InvalidArgument("disk radius must be positive");
  } else {
    const auto& r = std::get<Rectangle>(shape_);
    if (!(r.corner_lo.real() <= r.corner_hi.real() && r.corner_lo.imag() <= r.corner_hi.imag())) {
      throw InvalidArgument("rectangle corners must satisfy lo <= hi componentwise");
    }
  }
  if (!closure_in_strip(shape_)) throw InvalidArgument("compact set closure leaves D = {1/2 < Re s < 1}");
}

std::vector<cplx> CompactSet::sample_points() const {
  std::vector<cplx> pts;
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    pts.reserve(boundary_samples_ + interior_samples_);
    for (int k = 0; k < boundary_samples_; ++k) {
      pts.push_back(d->center + d->radius * unit_phase(static_cast<double>(k) / boundary_samples_));
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < interior_samples_; ++k) {
      const double rho = d->radius * std::sqrt(static_cast<double>(k) / interior_samples_);
      const double ang = golden * k;
      pts.push_back(d->center + cplx{rho * std::cos(ang), rho * std::sin(ang)});
    }
    return pts;
  }

  const auto& r = std::get<Rectangle>(shape_);
  const double w = r.corner_hi.real() - r.corner_lo.real();
  const double h = r.corner_hi.imag() - r.corner_lo.imag();
  if (w == 0.0 && h == 0.0) return {r.corner_lo};

  pts.reserve(boundary_samples_ + interior_samples_);
  const double perimeter = 2.0 * (w + h);
  for (int k = 0; k < boundary_samples_; ++k) {
    double arc = perimeter * k / boundary_samples_;
    cplx z;
    if (arc < w) {
      z = r.corner_lo + arc;
    } else if ((arc -= w) < h) {
      z = cplx{r.corner_hi.real(), r.corner_lo.imag() + arc};
    } else if ((arc -= h) < w) {
      z = cplx{r.corner_hi.real() - arc, r.corner_hi.imag()};
    } else {
      arc -= w;
      z = cplx{r.corner_lo.real(), r.corner_hi.imag() - arc};
    }
    pts.push_back(z);
  }
  const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(interior_samples_))));
  for (int k = 0; k < interior_samples_; ++k) {
    const int i = k % g;
    const int j = k / g;
    pts.push_back(r.corner_lo + cplx{(i + 0.5) / g * w, (j + 0.5) / g * h});
  }
  return pts;
}

double CompactSet::boundary_mesh_width() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    return 2.0 * d->radius * std::sin(std::numbers::pi / (2.0 * boundary_samples_));
  }
  const auto& r = std::get<Rectangle>(shape_);
  const cplx d = r.corner_hi - r.corner_lo;
  return (d.real() + d.imag()) / boundary_samples_;
}

Polynomial::Polynomial(std::vector<cplx> coefficients, cplx center)
    : coefficients_(std::move(coefficients)), center_(center) {
  if (static_cast<int>(coefficients_.size()) > kMaxDegree + 1) {
    throw InvalidArgument("polynomial degree exceeds 32");
  }
}

cplx Polynomial::operator()(cplx s) const {
  const cplx w = s - center_;
  cplx acc{};
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

bool Polynomial::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](cplx c) { return c == cplx{}; });
}

double Polynomial::modulus_bound(double rho) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * rho + std::abs(*it);
  return acc;
}

SupNormEstimate sup_distance(std::span<const cplx> values, const TargetPolynomial& target,
                             std::span<const cplx> points) {
  if (values.size() != points.size()) throw InvalidArgument("values and points differ in length");
  if (values.empty()) throw InvalidArgument("sup_distance needs at least one sample");
  SupNormEstimate est{-1.0, {}, static_cast<std::int64_t>(values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = std::abs(values[i] - target(points[i]));
    if (d > est.value) {
      est.value = d;
      est.argmax_point = points[i];
    }
  }
  return est;
}

}  // namespace lerch
