#include "lerch/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lerch/error.hpp"
#include "lerch/parallel.hpp"
#include "lerch/quadrature.hpp"

namespace lerch {
namespace {

constexpr std::int64_t kChunk = 4096;
constexpr double kWindowCap = 1e8;
constexpr double kIdentityTolerance = 1e-9;

// Fixed-order pairwise reduction; the tree shape depends only on v.size().
template <class T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return T{};
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

struct Partial {
  double s1 = 0.0;
  cplx s2;
  double s = 0.0;
  double s_sq = 0.0;

  Partial operator+(const Partial& o) const {
    return {s1 + o.s1, s2 + o.s2, s + o.s, s_sq + o.s_sq};
  }
};

void check_tuple(const TupleElement& g, std::span<const LerchParameters> params) {
  if (g.size() == 0) throw InvalidArgument("tuple element needs m >= 1 components");
  if (params.size() != g.size()) {
    throw InvalidArgument("parameter list length must equal the number of components");
  }
  for (const auto& p : params) p.validate();
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k].alpha != params[0].alpha) {
      throw InvalidArgument("all alpha must be equal");
    }
    for (std::size_t l = k + 1; l < params.size(); ++l) {
      if (params[k].lambda == params[l].lambda) {
        throw InvalidArgument("lambda values must be pairwise distinct");
      }
    }
  }
}

struct Window {
  std::int64_t first = 0;
  std::int64_t last = -1;
};

Window window_range(double x, WindowSpec w, double alpha) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("window start x must be positive");
  if (w.exponent < 0) throw InvalidArgument("window exponent must be >= 0");
  if (!(w.scale > 0.0)) throw InvalidArgument("window scale must be positive");
  const double lo = std::exp(x);
  if (lo > kWindowCap) throw InvalidArgument("window start e^x exceeds the 1e8 cap");
  const double hi = std::exp(x + w.scale * std::pow(x, -2.0 * w.exponent));
  Window r;
  r.first = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(lo - alpha)));
  r.last = static_cast<std::int64_t>(std::floor(hi - alpha));
  return r;
}

std::vector<DeltaTransform> make_transforms(const TupleElement& g, const BergmanDomain& u) {
  std::vector<DeltaTransform> out;
  out.reserve(g.size());
  for (const auto& c : g.components) out.emplace_back(c, u);
  return out;
}

// Sums over n in [first, last], evaluated in fixed chunks.
Partial window_partial(const std::vector<DeltaTransform>& delta,
                       std::span<const LerchParameters> params, Window win, int threads) {
  const std::size_t m = delta.size();
  const std::int64_t count = win.last - win.first + 1;
  const std::int64_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<Partial> parts(static_cast<std::size_t>(chunks));
  const double alpha = params[0].alpha;
  parallel_for(chunks, threads, [&](std::int64_t c) {
    std::vector<cplx> d(m);
    std::vector<double> frac(m);
    Partial acc;
    const std::int64_t n0 = win.first + c * kChunk;
    const std::int64_t n1 = std::min(win.last, n0 + kChunk - 1);
    for (std::int64_t n = n0; n <= n1; ++n) {
      const double ell = std::log(static_cast<double>(n) + alpha);
      cplx total;
      for (std::size_t j = 0; j < m; ++j) {
        d[j] = delta[j](ell);
        frac[j] = frac_product(params[j].lambda, n);
        const double ph = kTwoPi * frac[j];
        total += cplx(std::cos(ph), std::sin(ph)) * d[j];
        acc.s1 += std::norm(d[j]);
      }
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
          if (k == l) continue;
          acc.s2 += unit_phase(frac[k] - frac[l]) * d[k] * std::conj(d[l]);
        }
      }
      acc.s += std::abs(total);
      acc.s_sq += std::norm(total);
    }
    parts[static_cast<std::size_t>(c)] = acc;
  });
  return pairwise_sum(parts, 0, parts.size());
}

}  // namespace

BergmanDomain::BergmanDomain(Shape shape, int order) : shape_(std::move(shape)), order_(order) {
  if (order_ < 8) throw InvalidArgument("Bergman quadrature order q must be >= 8");
  if (!closure_in_strip(shape_)) {
    throw InvalidArgument("Bergman domain closure leaves D = {1/2 < Re s < 1}");
  }
  const GaussRule gl = gauss_legendre(order_);
  if (const auto* r = std::get_if<Rectangle>(&shape_)) {
    const double w = r->corner_hi.real() - r->corner_lo.real();
    const double h = r->corner_hi.imag() - r->corner_lo.imag();
    if (!(w > 0.0) || !(h > 0.0)) throw InvalidArgument("Bergman domain must have interior");
    axis_sigma_.resize(order_);
    axis_t_.resize(order_);
    for (int a = 0; a < order_; ++a) {
      axis_sigma_[a] = r->corner_lo.real() + 0.5 * w * (gl.nodes[a] + 1.0);
      axis_t_[a] = r->corner_lo.imag() + 0.5 * h * (gl.nodes[a] + 1.0);
    }
    nodes_.reserve(static_cast<std::size_t>(order_) * order_);
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b) {
        nodes_.push_back({{axis_sigma_[a], axis_t_[b]}, 0.25 * w * h * gl.weights[a] * gl.weights[b]});
      }
    }
  } else {
    const auto& d = std::get<Disk>(shape_);
    if (!(d.radius > 0.0)) throw InvalidArgument("Bergman domain must have interior");
    const int angles = 2 * order_;
    const double dphi = kTwoPi / angles;
    nodes_.reserve(static_cast<std::size_t>(order_) * angles);
    for (int a = 0; a < order_; ++a) {
      const double rho = 0.5 * d.radius * (gl.nodes[a] + 1.0);
      const double wr = 0.5 * d.radius * gl.weights[a] * rho;
      for (int b = 0; b < angles; ++b) {
        nodes_.push_back({d.center + rho * unit_phase(static_cast<double>(b) / angles), wr * dphi});
      }
    }
  }
}

cplx inner_product(const BergmanElement& f, const BergmanElement& g, const BergmanDomain& u) {
  CompensatedSum acc;
  for (const auto& node : u.nodes()) {
    acc.add(node.weight * f(node.point) * std::conj(g(node.point)));
  }
  return acc.value();
}

cplx inner_product(const TupleElement& f, const TupleElement& g, const BergmanDomain& u) {
  if (f.size() != g.size()) throw InvalidArgument("tuple elements differ in length");
  cplx acc;
  for (std::size_t j = 0; j < f.size(); ++j) acc += inner_product(f.components[j], g.components[j], u);
  return acc;
}

DeltaTransform::DeltaTransform(BergmanElement g, const BergmanDomain& u)
    : element_(std::move(g)), domain_(&u) {
  weighted_conj_.reserve(u.nodes().size());
  for (const auto& node : u.nodes()) {
    weighted_conj_.push_back(node.weight * std::conj(element_(node.point)));
  }
}

cplx DeltaTransform::operator()(cplx z) const {
  const auto& u = *domain_;
  const auto& nodes = u.nodes();
  if (u.is_rectangle()) {
    // e^{-sz} = e^{-sigma z} e^{-i t z}: q^2 products and 2q exponentials.
    const int q = u.order();
    const cplx iz(-z.imag(), z.real());
    std::vector<cplx> et(q);
    for (int b = 0; b < q; ++b) et[b] = std::exp(-iz * u.axis_t()[b]);
    cplx acc;
    for (int a = 0; a < q; ++a) {
      cplx inner;
      const cplx* w = weighted_conj_.data() + static_cast<std::size_t>(a) * q;
      for (int b = 0; b < q; ++b) inner += w[b] * et[b];
      acc += std::exp(-z * u.axis_sigma()[a]) * inner;
    }
    return acc;
  }
  cplx acc;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weighted_conj_[i] * std::exp(-nodes[i].point * z);
  return acc;
}

double delta_decay_constant(const BergmanElement& g, const BergmanDomain& u) {
  const double rho = shape_radius(u.shape());
  const double sup =
      g.coefficients().empty() ? 0.0 : g.modulus_bound(rho + std::abs(u.center() - g.center()));
  return u.area() * sup * std::exp(u.sigma1());
}

double vn_norm_sq(std::int64_t n, LerchParameters p, const BergmanDomain& u) {
  p.validate();
  if (n < 0) throw InvalidArgument("n must be >= 0");
  const double log_u = std::log(static_cast<double>(n) + p.alpha);
  CompensatedSum acc;
  for (const auto& node : u.nodes()) {
    acc.add(node.weight * std::exp(-2.0 * node.point.real() * log_u));
  }
  return acc.value().real();
}

cplx phi_pair_sum(double theta, double t) {
  if (!std::isfinite(theta) || theta == std::nearbyint(theta)) {
    throw InvalidArgument("phi_pair_sum requires a non-integer theta");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("phi_pair_sum requires t >= 0");
  const auto top = static_cast<std::int64_t>(std::floor(t)) + 1;
  return (unit_phase_product(theta, top) - 1.0) / (unit_phase(theta) - 1.0);
}

WindowedSums windowed_sums(const TupleElement& g, std::span<const LerchParameters> params,
                           const BergmanDomain& u, double x, WindowSpec window, int threads) {
  check_tuple(g, params);
  const Window win = window_range(x, window, params[0].alpha);
  if (win.last < win.first) {
    throw EmptyWindowError("empty window: no integer n with n + alpha in [e^x, e^{x + B x^{-2m}}] at x = " +
                           brief(x));
  }
  const auto delta = make_transforms(g, u);
  const Partial p = window_partial(delta, params, win, threads);
  WindowedSums out;
  out.s1 = p.s1;
  out.s2 = p.s2;
  out.s = p.s;
  out.s_sq = p.s_sq;
  out.n_first = win.first;
  out.n_last = win.last;
  const double scale = std::max(p.s_sq, p.s1);
  out.identity_residual = scale > 0.0 ? std::abs(cplx(p.s_sq) - p.s1 - p.s2) / scale : 0.0;
  if (out.identity_residual > kIdentityTolerance) {
    throw ComputationError("windowed sums violate S_sq = S1 + S2 (residual " +
                           brief(out.identity_residual) + ")");
  }
  return out;
}

std::vector<DivergenceRow> divergence_diagnostic(const TupleElement& g,
                                                 std::span<const LerchParameters> params,
                                                 const BergmanDomain& u,
                                                 std::span<const double> x_grid, WindowSpec window,
                                                 int threads) {
  check_tuple(g, params);
  std::vector<std::size_t> order(x_grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x_grid[a] < x_grid[b]; });
  const auto delta = make_transforms(g, u);
  const double m = static_cast<double>(g.size());
  std::vector<DivergenceRow> rows(x_grid.size());
  std::int64_t done = -1;  // cumulative sum covers n <= done
  double cum = 0.0;
  for (const std::size_t idx : order) {
    const double x = x_grid[idx];
    const WindowedSums w = windowed_sums(g, params, u, x, window, threads);
    if (w.n_last > done) {
      cum += window_partial(delta, params, {done + 1, w.n_last}, threads).s;
      done = w.n_last;
    }
    DivergenceRow& row = rows[idx];
    row.x = x;
    row.s = w.s;
    row.s1 = w.s1;
    row.abs_s2 = std::abs(w.s2);
    row.envelope = std::exp(x * (1.0 - u.sigma2())) / std::pow(x, 2.0 * m);
    row.n_end = w.n_last;
    row.cum_sum = cum;
  }
  return rows;
}

}  // namespace lerch
