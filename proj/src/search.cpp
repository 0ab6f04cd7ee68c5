#include "lerch/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "lerch/error.hpp"
#include "lerch/parallel.hpp"
#include "lerch/shift_expansion.hpp"

namespace lerch {
namespace {

constexpr double kPointTarget = 1e-12;
constexpr std::int64_t kMaxBlock = 32768;
constexpr std::int64_t kMinBlock = 64;
constexpr Eigen::Index kColumnChunk = 1024;
constexpr int kGoldenIterations = 40;
constexpr std::size_t kRefineCandidates = 8;
constexpr double kProbeRadius = 0.1;

std::int64_t block_modes(std::int64_t count) {
  const auto c = static_cast<std::uint64_t>(std::max<std::int64_t>(count, kMinBlock));
  return std::min<std::int64_t>(kMaxBlock, static_cast<std::int64_t>(std::bit_ceil(c)));
}

// Sup distance on one K_j, by expansion when possible.
class ComponentEvaluator {
 public:
  ComponentEvaluator(const TargetComponent& comp, LerchParameters p, double tau_max, double step)
      : params_(p), points_(comp.set.sample_points()), step_(step) {
    targets_.reserve(points_.size());
    for (const cplx s : points_) targets_.push_back(comp.target(s));
    const cplx c = comp.set.center();
    double r = 0.0;
    for (const cplx s : points_) r = std::max(r, std::abs(s - c));
    plan_ = plan_expansion(p, c, r, tau_max);
    if (!plan_.feasible) return;
    expansion_.emplace(p, plan_, step);
    // Real form of the complex Vandermonde matrix, acting on interleaved
    // (re, im) coefficient rows; real GEMM vectorizes far better.
    const int k = plan_.order;
    const auto n = static_cast<Eigen::Index>(points_.size());
    vander_.resize(2 * n, 2 * k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx u = (points_[i] - c) / plan_.scale;
      cplx pw(1.0, 0.0);
      for (int q = 0; q < k; ++q) {
        vander_(2 * i, 2 * q) = pw.real();
        vander_(2 * i, 2 * q + 1) = -pw.imag();
        vander_(2 * i + 1, 2 * q) = pw.imag();
        vander_(2 * i + 1, 2 * q + 1) = pw.real();
        pw *= u;
      }
    }
  }

  bool expandable() const { return expansion_.has_value(); }

  double direct(double tau) const {
    double d = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto v = eval_continued_relaxed(StripPoint::from(points_[i] + cplx(0.0, tau)), params_,
                                            kPointTarget);
      d = std::max(d, std::abs(v.value - targets_[i]));
    }
    return d;
  }

  double from_coefficients(const std::vector<cplx>& coeffs) const {
    double d = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const cplx u = (points_[i] - plan_.center) / plan_.scale;
      d = std::max(d, std::abs(eval_expansion(coeffs.data(), plan_.order, u) - targets_[i]));
    }
    return d;
  }

  /// Pointwise distance used for refinement.
  double at(double tau) const {
    if (!expandable() || expansion_->near_pole(tau)) return direct(tau);
    return from_coefficients(expansion_->at(tau));
  }

  // Writes max(dist[j], distance at tau_{first + j}) for the block and returns
  // the largest derivative bound seen.
  double block(std::int64_t first, int count, int modes, double* dist) const {
    std::vector<cplx> coeffs;
    std::vector<std::uint8_t> needs_direct;
    expansion_->block(first, count, modes, coeffs, needs_direct);
    const int k = plan_.order;
    const Eigen::Map<const Eigen::MatrixXd> cm(reinterpret_cast<const double*>(coeffs.data()),
                                               2 * k, count);
    const auto s = static_cast<Eigen::Index>(points_.size());
    Eigen::MatrixXd vals;
    for (Eigen::Index c0 = 0; c0 < count; c0 += kColumnChunk) {
      const Eigen::Index w = std::min<Eigen::Index>(kColumnChunk, count - c0);
      vals.noalias() = vander_ * cm.middleCols(c0, w);
      for (Eigen::Index col = 0; col < w; ++col) {
        double d = 0.0;
        for (Eigen::Index i = 0; i < s; ++i) {
          const double re = vals(2 * i, col) - targets_[i].real();
          const double im = vals(2 * i + 1, col) - targets_[i].imag();
          d = std::max(d, re * re + im * im);
        }
        dist[c0 + col] = std::max(dist[c0 + col], std::sqrt(d));
      }
    }
    double deriv = 0.0;
    for (int j = 0; j < count; ++j) {
      const auto tau = static_cast<double>(first + j) * step_;
      if (needs_direct[j]) {
        dist[j] = std::max(dist[j], direct(tau));
        continue;
      }
      if (plan_.radius > 0.0) {
        double b = 0.0;
        for (int q = 1; q < k; ++q) b += q * std::abs(coeffs[static_cast<std::size_t>(j) * k + q]);
        deriv = std::max(deriv, b / plan_.radius);
      }
    }
    return deriv;
  }

  bool has_radius() const { return plan_.radius > 0.0; }

 private:
  LerchParameters params_;
  std::vector<cplx> points_;
  std::vector<cplx> targets_;
  ExpansionPlan plan_;
  std::optional<ShiftExpansion> expansion_;
  double step_;
  Eigen::MatrixXd vander_;
};

std::vector<ComponentEvaluator> make_evaluators(const JointTarget& tgt, double tau_max,
                                                double step) {
  std::vector<ComponentEvaluator> out;
  out.reserve(tgt.size());
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    out.emplace_back(tgt.components[j], tgt.params[j], tau_max, step);
  }
  return out;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double& best_x) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 2; it < kGoldenIterations; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 <= f2) {
    best_x = x1;
    return f1;
  }
  best_x = x2;
  return f2;
}

}  // namespace

void JointTarget::validate() const {
  if (components.empty()) throw InvalidArgument("joint target needs m >= 1 components");
  if (params.size() != components.size()) {
    throw InvalidArgument("joint target needs one parameter pair per component");
  }
  for (const auto& p : params) p.validate();
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k].alpha != params[0].alpha) {
      throw InvalidArgument("all components must share one alpha");
    }
    for (std::size_t l = k + 1; l < params.size(); ++l) {
      if (std::abs(params[k].lambda - params[l].lambda) < kLambdaGap) {
        throw InvalidArgument("lambda values must be distinct: lambda_" + std::to_string(k + 1) +
                              " and lambda_" + std::to_string(l + 1) + " clash");
      }
    }
  }
}

void ScanConfig::validate() const {
  if (!(tau_step > 0.0) || !std::isfinite(tau_step)) throw InvalidArgument("tau_step must be positive");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(tau_max >= tau_step) || !std::isfinite(tau_max)) {
    throw InvalidArgument("tau_max must be >= tau_step");
  }
  if (tau_max / tau_step > 1e9) throw InvalidArgument("scan grid exceeds 1e9 points");
}

std::int64_t ScanConfig::grid_size() const {
  return static_cast<std::int64_t>(std::floor(tau_max / tau_step * (1.0 + 1e-12))) + 1;
}

double joint_distance(double tau, const JointTarget& tgt) {
  tgt.validate();
  double d = 0.0;
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    const auto& comp = tgt.components[j];
    for (const cplx s : comp.set.sample_points()) {
      const auto v = eval_continued_relaxed(StripPoint::from(s + cplx(0.0, tau)), tgt.params[j],
                                            kPointTarget);
      d = std::max(d, std::abs(v.value - comp.target(s)));
    }
  }
  return d;
}

ScanTrace scan_trace(const JointTarget& tgt, const ScanConfig& cfg) {
  tgt.validate();
  cfg.validate();
  const std::int64_t count = cfg.grid_size();
  ScanTrace trace;
  trace.step = cfg.tau_step;
  trace.tau_max = cfg.tau_max;
  trace.distance.assign(static_cast<std::size_t>(count), 0.0);
  const auto evals = make_evaluators(tgt, cfg.tau_max, cfg.tau_step);
  const std::int64_t modes = block_modes(count);
  const std::int64_t blocks = (count + modes - 1) / modes;
  std::vector<double> deriv(static_cast<std::size_t>(blocks), 0.0);
  bool pointwise = false;
  for (const auto& e : evals) pointwise = pointwise || !e.expandable() || !e.has_radius();

  parallel_for(blocks, cfg.threads, [&](std::int64_t b) {
    const std::int64_t first = b * modes;
    const int n = static_cast<int>(std::min(modes, count - first));
    double* dist = trace.distance.data() + first;
    for (const auto& e : evals) {
      if (e.expandable()) {
        deriv[b] = std::max(deriv[b], e.block(first, n, static_cast<int>(modes), dist));
      } else {
        for (int j = 0; j < n; ++j) dist[j] = std::max(dist[j], e.direct(trace.tau(first + j)));
      }
    }
  });
  trace.derivative_bound = pointwise ? std::numeric_limits<double>::quiet_NaN()
                                     : *std::max_element(deriv.begin(), deriv.end());
  return trace;
}

DensityReport build_report(const ScanTrace& trace, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (trace.distance.empty()) throw InvalidArgument("empty scan trace");
  DensityReport rep;
  const auto count = static_cast<std::int64_t>(trace.distance.size());
  rep.grid_points = count;
  rep.derivative_bound = trace.derivative_bound;
  const double half = 0.5 * trace.step;
  auto cell_lo = [&](std::int64_t j) { return std::max(0.0, trace.tau(j) - half); };
  auto cell_hi = [&](std::int64_t j) {
    return j == count - 1 ? trace.tau_max : std::min(trace.tau_max, trace.tau(j) + half);
  };
  std::int64_t best = 0;
  for (std::int64_t j = 0; j < count;) {
    if (trace.distance[j] < trace.distance[best]) best = j;
    if (!(trace.distance[j] < epsilon)) {
      ++j;
      continue;
    }
    std::int64_t k = j;
    while (k + 1 < count && trace.distance[k + 1] < epsilon) {
      ++k;
      if (trace.distance[k] < trace.distance[best]) best = k;
    }
    rep.hit_intervals.push_back({cell_lo(j), cell_hi(k)});
    rep.grid_hits += k - j + 1;
    j = k + 1;
  }
  for (const auto& iv : rep.hit_intervals) rep.hit_measure += iv.hi - iv.lo;
  rep.density = rep.hit_measure / trace.tau_max;
  rep.best_tau = trace.tau(best);
  rep.best_distance = trace.distance[best];
  return rep;
}

DensityReport refine_report(DensityReport report, const ScanTrace& trace, const JointTarget& tgt,
                            int threads) {
  const auto& d = trace.distance;
  const auto count = static_cast<std::int64_t>(d.size());
  std::vector<std::int64_t> minima;
  for (std::int64_t j = 0; j < count; ++j) {
    const bool left = j == 0 || d[j] <= d[j - 1];
    const bool right = j == count - 1 || d[j] <= d[j + 1];
    if (left && right) minima.push_back(j);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](std::int64_t a, std::int64_t b) { return d[a] < d[b]; });
  if (minima.size() > kRefineCandidates) minima.resize(kRefineCandidates);

  const auto evals = make_evaluators(tgt, trace.tau_max, trace.step);
  auto f = [&](double tau) {
    double v = 0.0;
    for (const auto& e : evals) v = std::max(v, e.at(tau));
    return v;
  };
  std::vector<double> xs(minima.size()), fs(minima.size());
  parallel_for(static_cast<std::int64_t>(minima.size()), threads, [&](std::int64_t i) {
    const std::int64_t j = minima[i];
    const double lo = std::max(0.0, trace.tau(j) - trace.step);
    const double hi = std::min(trace.tau_max, trace.tau(j) + trace.step);
    fs[i] = golden_section(f, lo, hi, xs[i]);
  });
  for (std::size_t i = 0; i < minima.size(); ++i) {
    if (fs[i] < report.best_distance) {
      report.best_distance = fs[i];
      report.best_tau = xs[i];
    }
  }
  return report;
}

DensityReport scan(const JointTarget& tgt, const ScanConfig& cfg, ScanTrace* trace_out) {
  ScanTrace trace = scan_trace(tgt, cfg);
  DensityReport rep = build_report(trace, cfg.epsilon);
  if (cfg.refine) rep = refine_report(std::move(rep), trace, tgt, cfg.threads);
  if (trace_out != nullptr) *trace_out = std::move(trace);
  return rep;
}

std::vector<cplx> derivative_vector(std::span<const LerchParameters> params, double sigma,
                                    int n_derivs, double t) {
  std::vector<cplx> h;
  h.reserve(params.size() * static_cast<std::size_t>(n_derivs));
  for (const auto& p : params) {
    for (int k = 0; k < n_derivs; ++k) {
      h.push_back(eval_derivative({sigma, t}, p, k, 1e-10).value);
    }
  }
  return h;
}

ProbeResult dense_image_probe(std::span<const LerchParameters> params, double sigma, int n_derivs,
                              std::span<const cplx> target, double epsilon, double t_max,
                              double t_step, int threads) {
  if (params.empty()) throw InvalidArgument("probe needs at least one parameter pair");
  for (const auto& p : params) p.validate();
  if (!(sigma > 0.5 && sigma < 1.0)) throw InvalidArgument("probe requires 1/2 < sigma < 1");
  if (n_derivs < 1 || n_derivs > 12) throw InvalidArgument("probe needs 1 <= N <= 12");
  if (target.size() != params.size() * static_cast<std::size_t>(n_derivs)) {
    throw InvalidArgument("target vector must have m * N entries");
  }
  ScanConfig grid{t_max, t_step, epsilon, false, threads};
  grid.validate();
  const std::int64_t count = grid.grid_size();
  const std::int64_t modes = block_modes(count);
  const std::int64_t blocks = (count + modes - 1) / modes;
  const std::size_t m = params.size();

  std::vector<ExpansionPlan> plans(m);
  for (std::size_t j = 0; j < m; ++j) {
    plans[j] = plan_expansion(params[j], {sigma, 0.0}, kProbeRadius, t_max);
    if (!plans[j].feasible) throw ConvergenceError("probe expansion is not feasible");
    plans[j].order = std::max(plans[j].order, n_derivs);
    plans[j].nodes = std::max(plans[j].nodes, plans[j].order);
  }
  std::vector<double> factor(n_derivs);  // k! / r^k
  factor[0] = 1.0;
  for (int k = 1; k < n_derivs; ++k) factor[k] = factor[k - 1] * k / kProbeRadius;

  std::vector<double> dist(static_cast<std::size_t>(count), 0.0);
  parallel_for(blocks, threads, [&](std::int64_t b) {
    const std::int64_t first = b * modes;
    const int n = static_cast<int>(std::min(modes, count - first));
    for (std::size_t j = 0; j < m; ++j) {
      const ShiftExpansion se(params[j], plans[j], t_step);
      std::vector<cplx> coeffs;
      std::vector<std::uint8_t> needs_direct;
      se.block(first, n, static_cast<int>(modes), coeffs, needs_direct);
      const int order = plans[j].order;
      for (int i = 0; i < n; ++i) {
        double d = 0.0;
        if (needs_direct[i]) {
          const double t = static_cast<double>(first + i) * t_step;
          const auto h = derivative_vector(params.subspan(j, 1), sigma, n_derivs, t);
          for (int k = 0; k < n_derivs; ++k) d = std::max(d, std::abs(h[k] - target[j * n_derivs + k]));
        } else {
          const cplx* c = coeffs.data() + static_cast<std::size_t>(i) * order;
          for (int k = 0; k < n_derivs; ++k) {
            d = std::max(d, std::abs(factor[k] * c[k] - target[j * n_derivs + k]));
          }
        }
        dist[first + i] = std::max(dist[first + i], d);
      }
    }
  });
  ProbeResult res;
  res.grid_points = count;
  std::int64_t best = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    if (dist[i] < dist[best]) best = i;
    if (dist[i] < epsilon) ++res.hits;
  }
  res.t_best = static_cast<double>(best) * t_step;
  res.distance = dist[best];
  return res;
}

}  // namespace lerch
