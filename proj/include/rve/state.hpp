#pragma once

#include <unordered_map>
#include <vector>

#include "rve/constraints.hpp"
#include "rve/material.hpp"
#include "rve/mesh.hpp"

namespace rve {

using MaterialMap = std::unordered_map<int, MaterialModel>;  // part_id -> model

struct LoadCurve {
  int id = 1;
  std::vector<std::pair<double, double>> points;  // (time, factor)

  void validate() const;
  // linear interpolation, flat beyond the ends
  double eval(double t) const;
};

struct SolveControls {
  int n_steps = 10;
  double newton_rtol = 1e-6;
  double newton_atol = 1e-10;
  int max_newton_iters = 25;
  double divergence_cutback = 0.5;
  int max_cutbacks = 4;
  bool verbose = true;
};

// Microscopic solution state: u(X) = H*X + w~(X).
struct FieldState {
  int dim = 3;
  Mat3 H = Mat3::Zero();          // current macroscopic displacement gradient
  std::vector<double> w_fluct;    // per node_idx*dim + dir
  std::vector<double> h_macro;    // per macro slot

  Vec3 fluct(int node_idx) const {
    Vec3 w = Vec3::Zero();
    for (int k = 0; k < dim; ++k) w[k] = w_fluct[node_idx * dim + k];
    return w;
  }
  Vec3 total_displacement(const Vec3& X, int node_idx) const {
    return split_displacement(H, X, dim) + fluct(node_idx);
  }
};

// One converged quadrature point, kept for averaging and field output.
struct QPRecord {
  Mat3 F = Mat3::Identity();
  Mat3 P = Mat3::Zero();
  Mat3 sigma = Mat3::Zero();
  double W = 0.0;
  double wdetJ = 0.0;
};

}  // namespace rve
