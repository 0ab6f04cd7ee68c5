#pragma once

// Batched type-1 nonuniform FFT with Gaussian gridding:
//
//   F_k(j) = sum_n c_{n,k} e^{-i j x_n},   j = 0 .. J-1,  k = 0 .. K-1,
//
// for points x_n in [0, 2 pi). Oversampling 2, spreading width 2 * kSpread.

#include <complex>
#include <cstddef>
#include <vector>

namespace lerch {

class GaussianGridNufft {
 public:
  static constexpr int kSpread = 12;

  /// modes must be even; batch is the number of strengths per point.
  GaussianGridNufft(int modes, int batch);
  ~GaussianGridNufft();
  GaussianGridNufft(const GaussianGridNufft&) = delete;
  GaussianGridNufft& operator=(const GaussianGridNufft&) = delete;

  int modes() const { return modes_; }
  int batch() const { return batch_; }

  void reset();
  /// Spreads the point x (any real; reduced mod 2 pi) with batch strengths.
  void add(double x, const std::complex<double>* strengths);
  /// Writes F_k(j) to out[j * batch + k] for j < modes.
  void transform(std::complex<double>* out);

 private:
  int modes_;
  int batch_;
  int grid_;       // 2 * modes
  double tau_;     // Gaussian variance parameter
  double h_;       // grid spacing 2 pi / grid_
  std::vector<double> e3_;               // e^{-(l h)^2 / 4 tau}, l = 0 .. kSpread
  std::vector<std::complex<double>> padded_;  // (grid_ + 2 kSpread) x batch
  std::vector<std::complex<double>> scratch_;
  void* in_ = nullptr;
  void* out_ = nullptr;
  void* plan_ = nullptr;
};

}  // namespace lerch
