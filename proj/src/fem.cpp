#include "rve/fem.hpp"

#include <cmath>

namespace rve {

namespace {

QuadratureRule make_rule(int dim) {
  const double g = 1.0 / std::sqrt(3.0);
  QuadratureRule r;
  if (dim == 2) {
    r.nqp = 4;
    int q = 0;
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        r.xi[q] = Vec3((i ? g : -g), (j ? g : -g), 0.0);
        r.weight[q] = 1.0;
        ++q;
      }
  } else {
    r.nqp = 8;
    int q = 0;
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
          r.xi[q] = Vec3((i ? g : -g), (j ? g : -g), (k ? g : -g));
          r.weight[q] = 1.0;
          ++q;
        }
  }
  return r;
}

// Corner signs in LS-DYNA/standard counter-clockwise ordering.
constexpr int quad_sign[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
constexpr int hex_sign[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                                {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};

}  // namespace

const QuadratureRule& quadrature(int dim) {
  static const QuadratureRule r2 = make_rule(2);
  static const QuadratureRule r3 = make_rule(3);
  return dim == 2 ? r2 : r3;
}

void shape_functions(int dim, const Vec3& xi, std::array<double, 8>& N,
                     std::array<Vec3, 8>& dN_dxi) {
  if (dim == 2) {
    for (int a = 0; a < 4; ++a) {
      const double sx = quad_sign[a][0], sy = quad_sign[a][1];
      const double fx = 0.5 * (1.0 + sx * xi[0]);
      const double fy = 0.5 * (1.0 + sy * xi[1]);
      N[a] = fx * fy;
      dN_dxi[a] = Vec3(0.5 * sx * fy, fx * 0.5 * sy, 0.0);
    }
  } else {
    for (int a = 0; a < 8; ++a) {
      const double sx = hex_sign[a][0], sy = hex_sign[a][1], sz = hex_sign[a][2];
      const double fx = 0.5 * (1.0 + sx * xi[0]);
      const double fy = 0.5 * (1.0 + sy * xi[1]);
      const double fz = 0.5 * (1.0 + sz * xi[2]);
      N[a] = fx * fy * fz;
      dN_dxi[a] = Vec3(0.5 * sx * fy * fz, fx * 0.5 * sy * fz, fx * fy * 0.5 * sz);
    }
  }
}

void element_geometry(const Mesh& mesh, const Element& el,
                      std::array<QPGeometry, 8>& out) {
  const int d = mesh.dim;
  const QuadratureRule& rule = quadrature(d);
  std::array<double, 8> N;
  std::array<Vec3, 8> dN_dxi;
  for (int q = 0; q < rule.nqp; ++q) {
    shape_functions(d, rule.xi[q], N, dN_dxi);
    Mat3 J = Mat3::Identity();  // pad out-of-plane with 1 so det works in 2D
    J.topLeftCorner(d, d).setZero();
    Vec3 X = Vec3::Zero();
    for (int a = 0; a < el.nen; ++a) {
      const Vec3& Xa = mesh.nodes[mesh.index_of(el.conn[a])].X;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) J(i, j) += Xa[i] * dN_dxi[a][j];
      X += N[a] * Xa;
    }
    const double detJ = J.determinant();
    if (detJ <= 0.0) {
      throw InvertedElement("non-positive Jacobian in element " +
                                std::to_string(el.id),
                            X);
    }
    const Mat3 Jinv = J.inverse();
    QPGeometry& g = out[q];
    g.wdetJ = rule.weight[q] * detJ;
    g.X = X;
    for (int a = 0; a < el.nen; ++a) {
      g.dN_dX[a] = Vec3::Zero();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g.dN_dX[a][i] += Jinv(j, i) * dN_dxi[a][j];
    }
  }
}

}  // namespace rve
