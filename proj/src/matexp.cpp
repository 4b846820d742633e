#include "optrec/matexp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "optrec/errors.hpp"

namespace optrec {

Mat Mat::identity(int size) {
  Mat m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (n != o.n) throw std::invalid_argument("Mat: size mismatch");
  Mat r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (n != o.n) throw std::invalid_argument("Mat: size mismatch");
  Mat r(n);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

Mat Mat::scaled(double c) const {
  Mat r(n);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
  return r;
}

std::vector<double> Mat::operator*(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("Mat: vector size mismatch");
  std::vector<double> r(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

bool Mat::all_finite() const {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

Mat matrix_exponential(const Mat& S, double h) {
  if (S.n == 0) throw std::invalid_argument("matrix_exponential: empty matrix");
  const Mat A = S.scaled(h);
  const double norm = A.max_abs() * S.n;  // cheap upper bound on the inf-norm
  if (!std::isfinite(norm))
    throw NumericalError("matrix_exponential: non-finite input");

  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5 && squarings < 64) {
    scale *= 0.5;
    ++squarings;
  }
  if (norm * scale > 0.5)
    throw NumericalError("matrix_exponential: ||S h|| too large (" + std::to_string(norm) + ")");

  const Mat B = A.scaled(scale);
  Mat result = Mat::identity(S.n);
  Mat term = Mat::identity(S.n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * B).scaled(1.0 / k);
    result = result + term;
    if (term.max_abs() <= 1e-18 * std::max(1.0, result.max_abs())) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;

  if (!result.all_finite())
    throw NumericalError("matrix_exponential: overflow while squaring");
  return result;
}

bool essentially_nonnegative(const Mat& S, int* bad_i, int* bad_j) {
  for (int i = 0; i < S.n; ++i) {
    for (int j = 0; j < S.n; ++j) {
      if (i != j && S(i, j) < 0.0) {
        if (bad_i) *bad_i = i;
        if (bad_j) *bad_j = j;
        return false;
      }
    }
  }
  return true;
}

}  // namespace optrec
