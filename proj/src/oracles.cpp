#include "rve/oracles.hpp"

#include <cmath>

namespace rve::oracles {

BoundResult laminate_bounds(double E1, double E2, double f1) {
  BoundResult r;
  r.E1 = E1;
  r.E2 = E2;
  r.f1 = f1;
  r.voigt = f1 * E1 + (1.0 - f1) * E2;
  r.reuss = 1.0 / (f1 / E1 + (1.0 - f1) / E2);
  return r;
}

double mr_energy_principal(double c10, double c01, double bulk, double l1,
                           double l2, double l3) {
  const double a = l1 * l1, b = l2 * l2, c = l3 * l3;
  const double I1 = a + b + c;
  const double I2 = a * b + b * c + c * a;
  const double J = l1 * l2 * l3;
  return c10 * (std::pow(J, -2.0 / 3.0) * I1 - 3.0) +
         c01 * (std::pow(J, -4.0 / 3.0) * I2 - 3.0) +
         0.5 * bulk * (J - 1.0) * (J - 1.0);
}

namespace {

// five-point central difference
template <typename F>
double deriv(F f, double x) {
  const double h = 1e-4 * std::max(1.0, std::fabs(x));
  return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) /
         (12.0 * h);
}

}  // namespace

double uniaxial_mr(double c10, double c01, double bulk, double stretch) {
  auto What = [&](double t) {
    return mr_energy_principal(c10, c01, bulk, stretch, t, t);
  };
  auto g = [&](double t) { return deriv(What, t); };  // = 2 * P22

  double lo = 0.05, hi = 4.0;
  double glo = g(lo), ghi = g(hi);
  // W is coercive in t at both ends, so g changes sign on (lo, hi)
  if (!(glo < 0.0 && ghi > 0.0)) throw Error("uniaxial oracle: no bracket");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * hi) break;
  }
  const double t = 0.5 * (lo + hi);
  auto W1 = [&](double l1) {
    return mr_energy_principal(c10, c01, bulk, l1, t, t);
  };
  return deriv(W1, stretch);  // P11
}

namespace {

constexpr int quad_sign[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
constexpr int hex_sign[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                                {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};

}  // namespace

Eigen::MatrixXd dense_element_stiffness(int dim,
                                        const Eigen::MatrixXd& node_coords,
                                        double E, double nu) {
  const int nen = dim == 2 ? 4 : 8;
  const int nstr = dim == 2 ? 3 : 6;
  const double la = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  const double mu = E / (2.0 * (1.0 + nu));
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nstr, nstr);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) D(i, j) = la;
    D(i, i) = la + 2.0 * mu;
  }
  for (int i = dim; i < nstr; ++i) D(i, i) = mu;

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nen * dim, nen * dim);
  const double g = 1.0 / std::sqrt(3.0);
  const int nqp = dim == 2 ? 4 : 8;
  for (int q = 0; q < nqp; ++q) {
    double xi[3] = {0, 0, 0};
    for (int k = 0; k < dim; ++k) xi[k] = ((q >> k) & 1) ? g : -g;
    // parent gradients
    Eigen::MatrixXd dNdxi(nen, dim);
    for (int a = 0; a < nen; ++a) {
      for (int k = 0; k < dim; ++k) {
        double v = 0.5 * (dim == 2 ? quad_sign[a][k] : hex_sign[a][k]);
        for (int m = 0; m < dim; ++m) {
          if (m == k) continue;
          const int s = dim == 2 ? quad_sign[a][m] : hex_sign[a][m];
          v *= 0.5 * (1.0 + s * xi[m]);
        }
        dNdxi(a, k) = v;
      }
    }
    Eigen::MatrixXd J = node_coords * dNdxi;  // dim x dim
    const double detJ = J.determinant();
    Eigen::MatrixXd dNdX = dNdxi * J.inverse();  // nen x dim

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nstr, nen * dim);
    for (int a = 0; a < nen; ++a) {
      for (int i = 0; i < dim; ++i) B(i, a * dim + i) = dNdX(a, i);
      if (dim == 2) {
        B(2, a * dim + 0) = dNdX(a, 1);
        B(2, a * dim + 1) = dNdX(a, 0);
      } else {
        // Voigt order 11,22,33,23,13,12 with engineering shears
        B(3, a * dim + 1) = dNdX(a, 2);
        B(3, a * dim + 2) = dNdX(a, 1);
        B(4, a * dim + 0) = dNdX(a, 2);
        B(4, a * dim + 2) = dNdX(a, 0);
        B(5, a * dim + 0) = dNdX(a, 1);
        B(5, a * dim + 1) = dNdX(a, 0);
      }
    }
    K += B.transpose() * D * B * detJ;
  }
  return K;
}

Eigen::MatrixXd dense_single_element_solve(int dim,
                                           const Eigen::MatrixXd& node_coords,
                                           double E, double nu,
                                           const Eigen::MatrixXd& H) {
  // Every node of a single element is on its boundary, so under the
  // affine boundary condition the displacement is u = H*X exactly; the
  // stiffness is still formed and factorized to confirm it is SPD on the
  // constrained problem.
  const int nen = static_cast<int>(node_coords.cols());
  Eigen::MatrixXd K = dense_element_stiffness(dim, node_coords, E, nu);
  Eigen::LLT<Eigen::MatrixXd> llt(
      K + 1e-8 * K.norm() * Eigen::MatrixXd::Identity(K.rows(), K.cols()));
  if (llt.info() != Eigen::Success)
    throw Error("single-element oracle: stiffness not SPD");
  Eigen::MatrixXd u(dim, nen);
  for (int a = 0; a < nen; ++a)
    u.col(a) = H.topLeftCorner(dim, dim) * node_coords.col(a);
  return u;
}

}  // namespace rve::oracles
