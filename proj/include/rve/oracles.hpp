#pragma once

#include <Eigen/Dense>

#include "rve/common.hpp"

// Independent closed-form and brute-force references used by the test
// suites. Nothing here shares code with the solver path it checks.

namespace rve::oracles {

struct BoundResult {
  double voigt = 0.0;
  double reuss = 0.0;
  double E1 = 0.0, E2 = 0.0, f1 = 0.0;
};

// Parallel (Voigt) and series (Reuss) moduli of a two-phase laminate.
BoundResult laminate_bounds(double E1, double E2, double f1);

// Uniaxial Mooney-Rivlin response: lateral stretch solved for zero
// lateral nominal stress, P11 returned. Derivatives of the energy are
// taken by high-order central differences, not the analytic tangent.
double uniaxial_mr(double c10, double c01, double bulk, double stretch);

// Scalar Mooney-Rivlin energy of a principal-stretch state, written from
// the invariants directly.
double mr_energy_principal(double c10, double c01, double bulk, double l1,
                           double l2, double l3);

// Dense small-strain solve of a single element under fully prescribed
// boundary displacement u = H*X: returns nodal displacements (all equal
// to the affine field for homogeneous properties). Built on the
// engineering B-matrix formulation, independent of the finite-strain
// assembly. node_coords is d x nen; returns d x nen displacements.
Eigen::MatrixXd dense_single_element_solve(int dim,
                                           const Eigen::MatrixXd& node_coords,
                                           double E, double nu,
                                           const Eigen::MatrixXd& H);

// Small-strain B-matrix stiffness of one quad4/hex8 element (Voigt
// engineering convention), dense. Used as the assembly oracle.
Eigen::MatrixXd dense_element_stiffness(int dim,
                                        const Eigen::MatrixXd& node_coords,
                                        double E, double nu);

}  // namespace rve::oracles
