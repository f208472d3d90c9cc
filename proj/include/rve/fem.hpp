#pragma once

#include <array>

#include "rve/common.hpp"
#include "rve/mesh.hpp"

namespace rve {

// Full Gauss quadrature: 2x2 for quad4, 2x2x2 for hex8.
struct QuadratureRule {
  int nqp = 0;
  std::array<Vec3, 8> xi{};
  std::array<double, 8> weight{};
};

const QuadratureRule& quadrature(int dim);

// Isoparametric shape values and parent-space gradients at xi.
void shape_functions(int dim, const Vec3& xi, std::array<double, 8>& N,
                     std::array<Vec3, 8>& dN_dxi);

// Geometry of one quadrature point of one element: reference-space shape
// gradients and the integration weight w*detJ.
struct QPGeometry {
  std::array<Vec3, 8> dN_dX{};
  double wdetJ = 0.0;
  Vec3 X = Vec3::Zero();  // physical location, for diagnostics
};

// Computes all quadrature points of an element; throws InvertedElement if
// det J <= 0 anywhere.
void element_geometry(const Mesh& mesh, const Element& el,
                      std::array<QPGeometry, 8>& out);

}  // namespace rve
