#include "rve/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace rve::kernels {

namespace {

Backend select_backend() {
  const char* force = std::getenv("RVE_SIMD");
  if (force && std::strcmp(force, "scalar") == 0) return Backend::Scalar;
#if RVE_HAVE_AVX2_BUILD
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    if (!force || std::strcmp(force, "avx2") == 0) return Backend::Avx2;
  }
#endif
  return Backend::Scalar;
}

}  // namespace

Backend active_backend() {
  static const Backend b = select_backend();
  return b;
}

std::string_view backend_name() {
  return active_backend() == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) {
#if RVE_HAVE_AVX2_BUILD
  if (active_backend() == Backend::Avx2) return avx2::dot(a, b, n);
#endif
  return scalar::dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
#if RVE_HAVE_AVX2_BUILD
  if (active_backend() == Backend::Avx2) return avx2::axpy(alpha, x, y, n);
#endif
  scalar::axpy(alpha, x, y, n);
}

double inf_norm(const double* a, std::size_t n) {
#if RVE_HAVE_AVX2_BUILD
  if (active_backend() == Backend::Avx2) return avx2::inf_norm(a, n);
#endif
  return scalar::inf_norm(a, n);
}

void batch_det3(const double* m, std::size_t n, double* out) {
#if RVE_HAVE_AVX2_BUILD
  if (active_backend() == Backend::Avx2) return avx2::batch_det3(m, n, out);
#endif
  scalar::batch_det3(m, n, out);
}

void batch_von_mises(const double* sigma, std::size_t n, double* out) {
#if RVE_HAVE_AVX2_BUILD
  if (active_backend() == Backend::Avx2) return avx2::batch_von_mises(sigma, n, out);
#endif
  scalar::batch_von_mises(sigma, n, out);
}

}  // namespace rve::kernels
