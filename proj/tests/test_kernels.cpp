#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rve/kernels.hpp"

using namespace rve;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar reference values") {
  const double a[4] = {1, 2, 3, 4};
  const double b[4] = {4, 3, 2, 1};
  CHECK(kernels::scalar::dot(a, b, 4) == doctest::Approx(20.0));
  CHECK(kernels::scalar::inf_norm(a, 4) == 4.0);

  double y[3] = {1, 1, 1};
  const double x[3] = {1, 2, 3};
  kernels::scalar::axpy(2.0, x, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);

  // identity and a known determinant
  double m[18] = {1, 0, 0, 0, 1, 0, 0, 0, 1,
                  2, 0, 0, 0, 3, 0, 0, 0, 4};
  double det[2];
  kernels::scalar::batch_det3(m, 2, det);
  CHECK(det[0] == doctest::Approx(1.0));
  CHECK(det[1] == doctest::Approx(24.0));

  // uniaxial stress: vm = |s11|
  double s[9] = {5, 0, 0, 0, 0, 0, 0, 0, 0};
  double vm;
  kernels::scalar::batch_von_mises(s, 1, &vm);
  CHECK(vm == doctest::Approx(5.0));
  // hydrostatic: vm = 0
  double sh[9] = {3, 0, 0, 0, 3, 0, 0, 0, 3};
  kernels::scalar::batch_von_mises(sh, 1, &vm);
  CHECK(vm == doctest::Approx(0.0));
}

#if RVE_HAVE_AVX2_BUILD
TEST_CASE("avx2 variants agree with scalar reference") {
  if (!__builtin_cpu_supports("avx2")) {
    MESSAGE("host has no AVX2; skipping");
    return;
  }
  for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 257u, 1024u}) {
    const auto a = random_vec(n, 11 + static_cast<unsigned>(n));
    const auto b = random_vec(n, 29 + static_cast<unsigned>(n));

    const double ds = kernels::scalar::dot(a.data(), b.data(), n);
    const double dv = kernels::avx2::dot(a.data(), b.data(), n);
    CHECK(std::fabs(ds - dv) <= 1e-13 * (1.0 + std::fabs(ds)));

    CHECK(kernels::scalar::inf_norm(a.data(), n) ==
          kernels::avx2::inf_norm(a.data(), n));

    auto ys = random_vec(n, 5);
    auto yv = ys;
    kernels::scalar::axpy(1.7, a.data(), ys.data(), n);
    kernels::avx2::axpy(1.7, a.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::fabs(ys[i] - yv[i]) <= 1e-15 * (1.0 + std::fabs(ys[i])));
  }

  for (std::size_t n : {1u, 4u, 5u, 100u}) {
    const auto m = random_vec(9 * n, 71 + static_cast<unsigned>(n));
    std::vector<double> ds(n), dv(n);
    kernels::scalar::batch_det3(m.data(), n, ds.data());
    kernels::avx2::batch_det3(m.data(), n, dv.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::fabs(ds[i] - dv[i]) <= 1e-13 * (1.0 + std::fabs(ds[i])));

    std::vector<double> vs(n), vv(n);
    kernels::scalar::batch_von_mises(m.data(), n, vs.data());
    kernels::avx2::batch_von_mises(m.data(), n, vv.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::fabs(vs[i] - vv[i]) <= 1e-13 * (1.0 + std::fabs(vs[i])));
  }
}
#endif

TEST_CASE("dispatch is consistent with the selected backend") {
  const auto a = random_vec(33, 1);
  const auto b = random_vec(33, 2);
  const double d = kernels::dot(a.data(), b.data(), 33);
  double ref;
  if (kernels::active_backend() == kernels::Backend::Scalar) {
    ref = kernels::scalar::dot(a.data(), b.data(), 33);
    CHECK(d == ref);
  } else {
#if RVE_HAVE_AVX2_BUILD
    ref = kernels::avx2::dot(a.data(), b.data(), 33);
    CHECK(d == ref);
#endif
  }
  MESSAGE("active backend: ", kernels::backend_name());
}
