#pragma once

#include <vector>

namespace optrec {

// Small dense square matrix, row-major.
struct Mat {
  int n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  static Mat identity(int size);

  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat scaled(double c) const;
  std::vector<double> operator*(const std::vector<double>& v) const;
  double max_abs() const;
  bool all_finite() const;
};

// e^{S h} by scaling and squaring with a truncated Taylor series.
// Throws NumericalError on overflow / non-finite results.
Mat matrix_exponential(const Mat& S, double h);

// Every off-diagonal entry >= 0. On failure, reports one offending entry.
bool essentially_nonnegative(const Mat& S, int* bad_i = nullptr, int* bad_j = nullptr);

}  // namespace optrec
