#pragma once

#include <Eigen/Dense>

#include "rve/state.hpp"

namespace rve {

struct HomogenizedRecord {
  double time = 0.0;
  Mat3 F_bar = Mat3::Identity();
  Mat3 E_bar = Mat3::Zero();
  Mat3 P_bar = Mat3::Zero();
  Mat3 sigma_bar = Mat3::Zero();
};

// Reference-volume average of PK1 and deformed-volume average of Cauchy.
std::pair<Mat3, Mat3> average_stress(const std::vector<QPRecord>& qps);

// Volume average of the microscopic displacement gradient F - I.
Mat3 average_gradient(const std::vector<QPRecord>& qps);

double total_energy(const std::vector<QPRecord>& qps);
double domain_volume(const std::vector<QPRecord>& qps);

HomogenizedRecord make_record(double time, const Mat3& H_bar, const Mat3& P_bar,
                              const Mat3& sigma_bar);

// Homogenized small-strain stiffness in Voigt order (11,22,33,23,13,12 in
// 3D; 11,22,12 in 2D) with engineering shear probes: column j is
// sigma_bar / probe for the unit strain probe j with every H component
// prescribed.
struct EffectiveTangent {
  Eigen::MatrixXd C;  // 6x6 or 3x3
  double probe = 1e-6;
};

EffectiveTangent effective_tangent(const Mesh& mesh, const MaterialMap& mats,
                                   BcKind kind, double probe = 1e-6);

}  // namespace rve
