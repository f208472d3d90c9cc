#pragma once

#include <Eigen/Sparse>
#include <functional>

#include "rve/homogenize.hpp"
#include "rve/state.hpp"

namespace rve {

// Reduced residual and (optionally) the consistent sparse tangent at the
// given state. Residual rows are the fluctuation equilibrium equations
// followed by |Omega| * P_bar entries for the free macro slots.
void assemble(const Mesh& mesh, const MaterialMap& mats,
              const ConstraintSystem& cs, const FieldState& state,
              Eigen::VectorXd& residual,
              Eigen::SparseMatrix<double>* tangent = nullptr);

// Sparse direct (LDLT) solve with a backward-error check.
Eigen::VectorXd solve_linear(const Eigen::SparseMatrix<double>& K,
                             const Eigen::VectorXd& rhs);

// Per-quadrature-point stress/strain of a state, for averaging and output.
std::vector<QPRecord> collect_qp_states(const Mesh& mesh,
                                        const MaterialMap& mats,
                                        const FieldState& state);

struct RunResult {
  std::vector<HomogenizedRecord> records;
  FieldState state;
};

// Incremental quasi-static solve to load.end_time. Emits one record per
// dt_rveout interval (snapped to completed steps; <= 0 means final step
// only). snapshot_cb, when set, is called at the same cadence governed by
// dt_field. Throws NonConvergence / InvertedElement after flushing what
// converged so far into the exception-free partial result via
// partial_out.
RunResult run(const Mesh& mesh, const MaterialMap& mats,
              const ConstraintSystem& cs, const MacroLoad& load,
              const LoadCurve& curve, const SolveControls& controls,
              double dt_rveout = 0.0,
              const std::function<void(const FieldState&, double)>&
                  snapshot_cb = {},
              double dt_field = 0.0,
              std::vector<HomogenizedRecord>* partial_out = nullptr);

}  // namespace rve
