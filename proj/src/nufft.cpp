#include "lerch/nufft.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "lerch/error.hpp"

namespace lerch {
namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

constexpr double kTwoPiLocal = 2.0 * std::numbers::pi;

}  // namespace

GaussianGridNufft::GaussianGridNufft(int modes, int batch)
    : modes_(modes), batch_(batch), grid_(2 * modes) {
  if (modes < 2 || modes % 2 != 0) throw InvalidArgument("NUFFT modes must be even and >= 2");
  if (batch < 1) throw InvalidArgument("NUFFT batch must be >= 1");
  const double j = static_cast<double>(modes);
  tau_ = std::numbers::pi * kSpread / (3.0 * j * j);
  h_ = kTwoPiLocal / grid_;
  e3_.resize(kSpread + 1);
  for (int l = 0; l <= kSpread; ++l) e3_[l] = std::exp(-(l * h_) * (l * h_) / (4.0 * tau_));
  padded_.assign(static_cast<std::size_t>(grid_ + 2 * kSpread) * batch_, {});
  scratch_.resize(batch_);

  const std::size_t n = static_cast<std::size_t>(grid_) * batch_;
  std::lock_guard lock(planner_mutex());
  in_ = fftw_malloc(sizeof(fftw_complex) * n);
  out_ = fftw_malloc(sizeof(fftw_complex) * n);
  int dims[1] = {grid_};
  plan_ = fftw_plan_many_dft(1, dims, batch_, static_cast<fftw_complex*>(in_), nullptr, batch_, 1,
                             static_cast<fftw_complex*>(out_), nullptr, batch_, 1, FFTW_FORWARD,
                             FFTW_ESTIMATE);
}

GaussianGridNufft::~GaussianGridNufft() {
  std::lock_guard lock(planner_mutex());
  if (plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void GaussianGridNufft::reset() { std::fill(padded_.begin(), padded_.end(), std::complex<double>{}); }

void GaussianGridNufft::add(double x, const std::complex<double>* strengths) {
  x = std::fmod(x, kTwoPiLocal);
  if (x < 0.0) x += kTwoPiLocal;
  // Shift modes to [-J/2, J/2): multiply by e^{-i (J/2) x}.
  const double shift = -0.5 * modes_ * x;
  const std::complex<double> rot(std::cos(shift), std::sin(shift));
  for (int k = 0; k < batch_; ++k) scratch_[k] = strengths[k] * rot;

  int m0 = static_cast<int>(x / h_);
  if (m0 >= grid_) m0 = grid_ - 1;
  const double d = x - m0 * h_;
  const double e1 = std::exp(-d * d / (4.0 * tau_));
  const double e2 = std::exp(d * h_ / (2.0 * tau_));
  const double e2inv = 1.0 / e2;

  auto spread = [&](int l, double w) {
    std::complex<double>* row = padded_.data() + static_cast<std::size_t>(m0 + l + kSpread) * batch_;
    for (int k = 0; k < batch_; ++k) row[k] += w * scratch_[k];
  };
  double pw = e1;
  for (int l = 0; l <= kSpread; ++l) {
    spread(l, pw * e3_[l]);
    pw *= e2;
  }
  pw = e1 * e2inv;
  for (int l = 1; l < kSpread; ++l) {
    spread(-l, pw * e3_[l]);
    pw *= e2inv;
  }
}

void GaussianGridNufft::transform(std::complex<double>* out) {
  auto* in = reinterpret_cast<std::complex<double>*>(in_);
  const std::size_t b = batch_;
  for (int m = 0; m < grid_; ++m) {
    for (std::size_t k = 0; k < b; ++k) in[m * b + k] = padded_[(m + kSpread) * b + k];
  }
  // Fold the periodic padding back onto the grid.
  for (int l = 0; l < kSpread; ++l) {
    for (std::size_t k = 0; k < b; ++k) {
      in[(grid_ - kSpread + l) * b + k] += padded_[l * b + k];
      in[l * b + k] += padded_[(grid_ + kSpread + l) * b + k];
    }
  }
  fftw_execute(static_cast<fftw_plan>(plan_));
  const auto* f = reinterpret_cast<const std::complex<double>*>(out_);
  const double norm = std::sqrt(std::numbers::pi / tau_) / grid_;
  for (int j = 0; j < modes_; ++j) {
    const int kk = j - modes_ / 2;
    const int idx = kk < 0 ? kk + grid_ : kk;
    const double scale = norm * std::exp(static_cast<double>(kk) * kk * tau_);
    for (std::size_t k = 0; k < b; ++k) out[j * b + k] = scale * f[idx * b + k];
  }
}

}  // namespace lerch
