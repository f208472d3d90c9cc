#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner-loop kernels. Every kernel has a scalar reference
// implementation and, on x86 hosts with AVX2, a vectorized variant. The
// active backend is chosen once at startup from CPU capabilities; set
// RVE_SIMD=scalar in the environment to force the reference path.

namespace rve::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
std::string_view backend_name();

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double inf_norm(const double* a, std::size_t n);

// 3x3 determinants of n row-major matrices stored contiguously (stride 9).
void batch_det3(const double* m, std::size_t n, double* out);

// von Mises invariant of n symmetric 3x3 stresses, row-major stride 9.
void batch_von_mises(const double* sigma, std::size_t n, double* out);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double inf_norm(const double* a, std::size_t n);
void batch_det3(const double* m, std::size_t n, double* out);
void batch_von_mises(const double* sigma, std::size_t n, double* out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define RVE_HAVE_AVX2_BUILD 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double inf_norm(const double* a, std::size_t n);
void batch_det3(const double* m, std::size_t n, double* out);
void batch_von_mises(const double* sigma, std::size_t n, double* out);
}  // namespace avx2
#else
#define RVE_HAVE_AVX2_BUILD 0
#endif

}  // namespace rve::kernels
