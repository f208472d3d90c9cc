#pragma once

#include "rve/common.hpp"

namespace rve {

enum class MaterialKind { LinearElastic, MooneyRivlin };

// Fourth-order tangent dP_iJ/dF_kL; only the leading dim indices are used.
struct Tangent4 {
  double a[3][3][3][3] = {};
  double& operator()(int i, int J, int k, int L) { return a[i][J][k][L]; }
  double operator()(int i, int J, int k, int L) const { return a[i][J][k][L]; }
  double max_abs(int dim) const;
};

struct PointState {
  Mat3 F = Mat3::Identity();
  Mat3 P = Mat3::Zero();      // first Piola-Kirchhoff
  Mat3 sigma = Mat3::Zero();  // Cauchy, J^-1 P F^T
  Tangent4 A;
  double W = 0.0;  // strain energy density
};

class MaterialModel {
 public:
  static MaterialModel linear_elastic(double E, double nu);
  static MaterialModel mooney_rivlin(double c10, double c01, double bulk);

  MaterialKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double c10() const { return c10_; }
  double c01() const { return c01_; }
  double bulk() const { return bulk_; }

  // Stress, consistent tangent, and energy at deformation gradient F.
  // 2D callers pass F embedded in 3x3 with F33 = 1 (plane strain) and read
  // back the in-plane blocks. Throws InvertedElement if det F <= 0.
  PointState evaluate(const Mat3& F, int dim = 3) const;
  double energy(const Mat3& F, int dim = 3) const;

 private:
  MaterialModel() = default;
  MaterialKind kind_ = MaterialKind::LinearElastic;
  double lambda_ = 0.0, mu_ = 0.0;          // LinearElastic
  double c10_ = 0.0, c01_ = 0.0, bulk_ = 0.0;  // MooneyRivlin
};

// Max relative deviation between the analytic tangent and a central
// difference of P, over all dim^4 components.
double tangent_check(const MaterialModel& model, const Mat3& F, double h,
                     int dim = 3);

}  // namespace rve
