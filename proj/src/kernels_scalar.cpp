#include "rve/kernels.hpp"

#include <cmath>

namespace rve::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double inf_norm(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void batch_det3(const double* m, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double* a = m + 9 * k;
    out[k] = a[0] * (a[4] * a[8] - a[5] * a[7]) -
             a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
  }
}

void batch_von_mises(const double* sigma, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double* s = sigma + 9 * k;
    const double d01 = s[0] - s[4];
    const double d12 = s[4] - s[8];
    const double d20 = s[8] - s[0];
    const double sh = s[1] * s[1] + s[5] * s[5] + s[2] * s[2];
    out[k] = std::sqrt(0.5 * (d01 * d01 + d12 * d12 + d20 * d20) + 3.0 * sh);
  }
}

}  // namespace rve::kernels::scalar
