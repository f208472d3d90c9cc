#include "rve/homogenize.hpp"

#include "rve/solver.hpp"

namespace rve {

std::pair<Mat3, Mat3> average_stress(const std::vector<QPRecord>& qps) {
  Mat3 P_sum = Mat3::Zero();
  Mat3 sig_sum = Mat3::Zero();
  double vol = 0.0, vol_def = 0.0;
  for (const QPRecord& q : qps) {
    const double Jq = q.F.determinant();
    P_sum += q.P * q.wdetJ;
    sig_sum += q.sigma * (Jq * q.wdetJ);
    vol += q.wdetJ;
    vol_def += Jq * q.wdetJ;
  }
  return {P_sum / vol, sig_sum / vol_def};
}

Mat3 average_gradient(const std::vector<QPRecord>& qps) {
  Mat3 H_sum = Mat3::Zero();
  double vol = 0.0;
  for (const QPRecord& q : qps) {
    H_sum += (q.F - Mat3::Identity()) * q.wdetJ;
    vol += q.wdetJ;
  }
  return H_sum / vol;
}

double total_energy(const std::vector<QPRecord>& qps) {
  double e = 0.0;
  for (const QPRecord& q : qps) e += q.W * q.wdetJ;
  return e;
}

double domain_volume(const std::vector<QPRecord>& qps) {
  double v = 0.0;
  for (const QPRecord& q : qps) v += q.wdetJ;
  return v;
}

HomogenizedRecord make_record(double time, const Mat3& H_bar, const Mat3& P_bar,
                              const Mat3& sigma_bar) {
  HomogenizedRecord r;
  r.time = time;
  r.F_bar = H_bar + Mat3::Identity();
  r.E_bar = 0.5 * (r.F_bar.transpose() * r.F_bar - Mat3::Identity());
  r.P_bar = P_bar;
  r.sigma_bar = sigma_bar;
  return r;
}

namespace {

// Voigt index -> tensor indices; 3D order 11,22,33,23,13,12.
constexpr int voigt3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
constexpr int voigt2[3][2] = {{0, 0}, {1, 1}, {0, 1}};

}  // namespace

EffectiveTangent effective_tangent(const Mesh& mesh, const MaterialMap& mats,
                                   BcKind kind, double probe) {
  const int d = mesh.dim;
  const int nv = d == 2 ? 3 : 6;
  const auto* vmap = d == 2 ? voigt2 : voigt3;

  EffectiveTangent out;
  out.probe = probe;
  out.C.resize(nv, nv);

  std::vector<FacePairing> pairings;
  if (kind == BcKind::PDBC) pairings = pair_periodic_nodes(mesh);

  LoadCurve ramp;
  ramp.points = {{0.0, 0.0}, {1.0, 1.0}};
  SolveControls ctl;
  ctl.n_steps = 1;
  ctl.newton_rtol = 1e-12;
  ctl.verbose = false;

  for (int col = 0; col < nv; ++col) {
    const int pi = vmap[col][0], pj = vmap[col][1];
    MacroLoad load;
    load.end_time = 1.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) load.H[i][j] = 0.0;
    if (pi == pj) {
      load.H[pi][pj] = probe;
    } else {
      // engineering shear probe gamma = probe
      load.H[pi][pj] = 0.5 * probe;
      load.H[pj][pi] = 0.5 * probe;
    }
    const ConstraintSystem cs = build_constraints(mesh, pairings, load, kind);
    RunResult res = run(mesh, mats, cs, load, ramp, ctl);
    const Mat3& sig = res.records.back().sigma_bar;
    for (int row = 0; row < nv; ++row)
      out.C(row, col) = sig(vmap[row][0], vmap[row][1]) / probe;
  }
  return out;
}

}  // namespace rve
