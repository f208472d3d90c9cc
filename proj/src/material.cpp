#include "rve/material.hpp"

#include <cmath>

namespace rve {

double Tangent4::max_abs(int dim) const {
  double m = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int J = 0; J < dim; ++J)
      for (int k = 0; k < dim; ++k)
        for (int L = 0; L < dim; ++L) m = std::max(m, std::fabs(a[i][J][k][L]));
  return m;
}

MaterialModel MaterialModel::linear_elastic(double E, double nu) {
  if (!(E > 0.0)) throw ParseError("linear elastic: E must be positive");
  if (!(nu > -1.0 && nu < 0.5))
    throw ParseError("linear elastic: nu must be in (-1, 0.5)");
  MaterialModel m;
  m.kind_ = MaterialKind::LinearElastic;
  m.lambda_ = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  m.mu_ = E / (2.0 * (1.0 + nu));
  return m;
}

MaterialModel MaterialModel::mooney_rivlin(double c10, double c01, double bulk) {
  if (c10 < 0.0 || c01 < 0.0 || c10 + c01 <= 0.0)
    throw ParseError("mooney-rivlin: need C10, C01 >= 0 with C10 + C01 > 0");
  if (!(bulk > 0.0)) throw ParseError("mooney-rivlin: bulk modulus must be positive");
  MaterialModel m;
  m.kind_ = MaterialKind::MooneyRivlin;
  m.c10_ = c10;
  m.c01_ = c01;
  m.bulk_ = bulk;
  return m;
}

namespace {

inline double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

PointState MaterialModel::evaluate(const Mat3& F, int dim) const {
  const double J = F.determinant();
  if (!(J > 0.0))
    throw InvertedElement("det F <= 0 in material evaluation", Vec3::Zero());

  PointState st;
  st.F = F;

  if (kind_ == MaterialKind::LinearElastic) {
    const Mat3 eps = 0.5 * (F + F.transpose()) - Mat3::Identity();
    const double tr = eps.trace();
    st.P = lambda_ * tr * Mat3::Identity() + 2.0 * mu_ * eps;
    st.W = 0.5 * lambda_ * tr * tr + mu_ * eps.squaredNorm();
    for (int i = 0; i < 3; ++i)
      for (int Jj = 0; Jj < 3; ++Jj)
        for (int k = 0; k < 3; ++k)
          for (int L = 0; L < 3; ++L)
            st.A(i, Jj, k, L) = lambda_ * kron(i, Jj) * kron(k, L) +
                                mu_ * (kron(i, k) * kron(Jj, L) +
                                       kron(i, L) * kron(Jj, k));
  } else {
    const Mat3 G = F.inverse().transpose();
    const Mat3 C = F.transpose() * F;
    const Mat3 B = F * F.transpose();
    const Mat3 FC = F * C;
    const double I1 = C.trace();
    const double I2 = 0.5 * (I1 * I1 - C.squaredNorm());
    const double j23 = std::pow(J, -2.0 / 3.0);
    const double j43 = j23 * j23;

    st.W = c10_ * (j23 * I1 - 3.0) + c01_ * (j43 * I2 - 3.0) +
           0.5 * bulk_ * (J - 1.0) * (J - 1.0);

    const Mat3 T1 = F - (I1 / 3.0) * G;              // d(isochoric I1)/dF / (2 j23)
    const Mat3 S = I1 * F - FC - (2.0 * I2 / 3.0) * G;
    st.P = 2.0 * c10_ * j23 * T1 + 2.0 * c01_ * j43 * S +
           bulk_ * (J - 1.0) * J * G;

    const Mat3 dI2 = I1 * F - FC;  // dI2/dF / 2
    for (int i = 0; i < 3; ++i)
      for (int Jj = 0; Jj < 3; ++Jj)
        for (int k = 0; k < 3; ++k)
          for (int L = 0; L < 3; ++L) {
            double a1 = -(2.0 / 3.0) * G(k, L) * T1(i, Jj) +
                        kron(i, k) * kron(Jj, L) -
                        (2.0 / 3.0) * F(k, L) * G(i, Jj) +
                        (I1 / 3.0) * G(k, Jj) * G(i, L);
            a1 *= 2.0 * c10_ * j23;

            double dS = 2.0 * F(k, L) * F(i, Jj) + I1 * kron(i, k) * kron(Jj, L) -
                        (kron(i, k) * C(L, Jj) + F(i, L) * F(k, Jj) +
                         B(i, k) * kron(Jj, L)) -
                        (4.0 / 3.0) * dI2(k, L) * G(i, Jj) +
                        (2.0 * I2 / 3.0) * G(k, Jj) * G(i, L);
            double a2 = 2.0 * c01_ * j43 *
                        (-(4.0 / 3.0) * G(k, L) * S(i, Jj) + dS);

            double a3 = bulk_ * (2.0 * J - 1.0) * J * G(k, L) * G(i, Jj) -
                        bulk_ * (J * J - J) * G(k, Jj) * G(i, L);

            st.A(i, Jj, k, L) = a1 + a2 + a3;
          }
  }

  st.sigma = (1.0 / J) * st.P * F.transpose();
  (void)dim;
  return st;
}

double MaterialModel::energy(const Mat3& F, int dim) const {
  return evaluate(F, dim).W;
}

double tangent_check(const MaterialModel& model, const Mat3& F, double h,
                     int dim) {
  const PointState st = model.evaluate(F, dim);
  const double scale = std::max(1.0, st.A.max_abs(dim));
  double worst = 0.0;
  for (int k = 0; k < dim; ++k)
    for (int L = 0; L < dim; ++L) {
      Mat3 Fp = F, Fm = F;
      Fp(k, L) += h;
      Fm(k, L) -= h;
      const Mat3 Pp = model.evaluate(Fp, dim).P;
      const Mat3 Pm = model.evaluate(Fm, dim).P;
      for (int i = 0; i < dim; ++i)
        for (int J = 0; J < dim; ++J) {
          const double fd = (Pp(i, J) - Pm(i, J)) / (2.0 * h);
          worst = std::max(worst, std::fabs(st.A(i, J, k, L) - fd) / scale);
        }
    }
  return worst;
}

}  // namespace rve
