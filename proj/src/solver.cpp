#include "rve/solver.hpp"

#include <cmath>
#include <cstdio>

#include "rve/fem.hpp"
#include "rve/kernels.hpp"

namespace rve {

void LoadCurve::validate() const {
  if (points.size() < 2) throw ParseError("load curve needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].first > points[i - 1].first))
      throw ParseError("load curve times must be strictly increasing");
}

double LoadCurve::eval(double t) const {
  if (t <= points.front().first) return points.front().second;
  if (t >= points.back().first) return points.back().second;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (t <= points[i].first) {
      const auto [t0, v0] = points[i - 1];
      const auto [t1, v1] = points[i];
      return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
  }
  return points.back().second;
}

namespace {

const MaterialModel& material_for(const MaterialMap& mats, int part_id) {
  auto it = mats.find(part_id);
  if (it == mats.end())
    throw ParseError("no material assigned to part " + std::to_string(part_id));
  return it->second;
}

// Columns of the reduced system a local dof couples to: at most one
// fluctuation column plus the macro slots (weight = X component).
struct DofCols {
  int fluct_col = -1;
  std::array<double, 9> macro_w{};  // per slot
};

Mat3 embed_F(const Mat3& gradu, int dim) {
  Mat3 F = Mat3::Identity();
  F.topLeftCorner(dim, dim) += gradu.topLeftCorner(dim, dim);
  return F;
}

}  // namespace

void assemble(const Mesh& mesh, const MaterialMap& mats,
              const ConstraintSystem& cs, const FieldState& state,
              Eigen::VectorXd& residual, Eigen::SparseMatrix<double>* tangent) {
  const int d = mesh.dim;
  const int nred = cs.n_unknowns();
  residual.setZero(nred);
  std::vector<Eigen::Triplet<double>> trips;
  if (tangent) trips.reserve(mesh.elements.size() * 600);

  std::array<QPGeometry, 8> geo;
  const int nqp = quadrature(d).nqp;

  for (const Element& el : mesh.elements) {
    const MaterialModel& mat = material_for(mats, el.part_id);
    element_geometry(mesh, el, geo);

    std::array<int, 8> nidx{};
    std::array<Vec3, 8> u{};
    for (int a = 0; a < el.nen; ++a) {
      nidx[a] = mesh.index_of(el.conn[a]);
      u[a] = state.total_displacement(mesh.nodes[nidx[a]].X, nidx[a]);
    }

    const int ndof = el.nen * d;
    std::array<double, 24> f_local{};
    Eigen::Matrix<double, 24, 24> K_local;
    if (tangent) K_local.setZero();

    for (int q = 0; q < nqp; ++q) {
      const QPGeometry& g = geo[q];
      Mat3 gradu = Mat3::Zero();
      for (int a = 0; a < el.nen; ++a)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) gradu(i, j) += u[a][i] * g.dN_dX[a][j];
      const Mat3 F = embed_F(gradu, d);
      if (!(F.determinant() > 0.0))
        throw InvertedElement("det F <= 0 in element " + std::to_string(el.id),
                              g.X);
      const PointState st = mat.evaluate(F, d);

      for (int a = 0; a < el.nen; ++a)
        for (int i = 0; i < d; ++i) {
          double v = 0.0;
          for (int J = 0; J < d; ++J) v += st.P(i, J) * g.dN_dX[a][J];
          f_local[a * d + i] += v * g.wdetJ;
        }

      if (tangent) {
        for (int a = 0; a < el.nen; ++a)
          for (int b = 0; b < el.nen; ++b)
            for (int i = 0; i < d; ++i)
              for (int k = 0; k < d; ++k) {
                double v = 0.0;
                for (int J = 0; J < d; ++J)
                  for (int L = 0; L < d; ++L)
                    v += g.dN_dX[a][J] * st.A(i, J, k, L) * g.dN_dX[b][L];
                K_local(a * d + i, b * d + k) += v * g.wdetJ;
              }
      }
    }

    // reduced-column weights per local dof
    std::array<DofCols, 24> cols;
    for (int a = 0; a < el.nen; ++a) {
      const Vec3& X = mesh.nodes[nidx[a]].X;
      for (int i = 0; i < d; ++i) {
        DofCols& c = cols[a * d + i];
        c.fluct_col = cs.dof_reduced(nidx[a], i);
        c.macro_w.fill(0.0);
        for (const auto& fe : cs.free_entries)
          if (fe.i == i) c.macro_w[fe.slot] += X[fe.j];
      }
    }

    auto for_each_col = [&](int p, auto&& fn) {
      const DofCols& c = cols[p];
      if (c.fluct_col >= 0) fn(c.fluct_col, 1.0);
      for (int s = 0; s < cs.n_macro_slots; ++s)
        if (c.macro_w[s] != 0.0) fn(cs.macro_col(s), c.macro_w[s]);
    };

    for (int p = 0; p < ndof; ++p) {
      for_each_col(p, [&](int row, double wr) {
        residual[row] += wr * f_local[p];
      });
      if (tangent) {
        for (int qd = 0; qd < ndof; ++qd) {
          const double kpq = K_local(p, qd);
          if (kpq == 0.0) continue;
          for_each_col(p, [&](int row, double wr) {
            for_each_col(qd, [&](int col, double wc) {
              trips.emplace_back(row, col, wr * wc * kpq);
            });
          });
        }
      }
    }
  }

  if (tangent) {
    tangent->resize(nred, nred);
    tangent->setFromTriplets(trips.begin(), trips.end());
  }
}

Eigen::VectorXd solve_linear(const Eigen::SparseMatrix<double>& K,
                             const Eigen::VectorXd& rhs) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(K);
  if (ldlt.info() != Eigen::Success)
    throw Error("sparse LDLT factorization failed (singular or indefinite "
                "reduced system)");
  Eigen::VectorXd x = ldlt.solve(rhs);
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0 && (K * x - rhs).norm() > 1e-10 * rhs_norm)
    throw Error("sparse solve backward error above tolerance");
  return x;
}

std::vector<QPRecord> collect_qp_states(const Mesh& mesh,
                                        const MaterialMap& mats,
                                        const FieldState& state) {
  const int d = mesh.dim;
  const int nqp = quadrature(d).nqp;
  std::vector<QPRecord> out;
  out.reserve(mesh.elements.size() * nqp);
  std::array<QPGeometry, 8> geo;
  for (const Element& el : mesh.elements) {
    const MaterialModel& mat = material_for(mats, el.part_id);
    element_geometry(mesh, el, geo);
    std::array<Vec3, 8> u{};
    for (int a = 0; a < el.nen; ++a) {
      const int ni = mesh.index_of(el.conn[a]);
      u[a] = state.total_displacement(mesh.nodes[ni].X, ni);
    }
    for (int q = 0; q < nqp; ++q) {
      const QPGeometry& g = geo[q];
      Mat3 gradu = Mat3::Zero();
      for (int a = 0; a < el.nen; ++a)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) gradu(i, j) += u[a][i] * g.dN_dX[a][j];
      const Mat3 F = embed_F(gradu, d);
      const PointState st = mat.evaluate(F, d);
      QPRecord rec;
      rec.F = F;
      rec.P = st.P;
      rec.sigma = st.sigma;
      rec.W = st.W;
      rec.wdetJ = g.wdetJ;
      out.push_back(rec);
    }
  }
  return out;
}

namespace {

Mat3 rebuild_H(const ConstraintSystem& cs, const MacroLoad& load,
               double curve_factor, const std::vector<double>& h_macro) {
  Mat3 H = Mat3::Zero();
  for (int i = 0; i < cs.dim; ++i)
    for (int j = 0; j < cs.dim; ++j)
      if (load.H[i][j]) H(i, j) = curve_factor * (*load.H[i][j]);
  for (const auto& fe : cs.free_entries) H(fe.i, fe.j) = h_macro[fe.slot];
  return H;
}

void apply_update(const ConstraintSystem& cs, const Eigen::VectorXd& delta,
                  FieldState& state) {
  const int n = static_cast<int>(cs.reduced_index.size());
  for (int fd = 0; fd < n; ++fd) {
    const int r = cs.reduced_index[fd];
    if (r >= 0) state.w_fluct[fd] += delta[r];
  }
  for (int s = 0; s < cs.n_macro_slots; ++s)
    state.h_macro[s] += delta[cs.macro_col(s)];
}

HomogenizedRecord record_at(const Mesh& mesh, const MaterialMap& mats,
                            const FieldState& state, double t) {
  const std::vector<QPRecord> qps = collect_qp_states(mesh, mats, state);
  const auto [P_bar, sigma_bar] = average_stress(qps);
  return make_record(t, average_gradient(qps), P_bar, sigma_bar);
}

}  // namespace

RunResult run(const Mesh& mesh, const MaterialMap& mats,
              const ConstraintSystem& cs, const MacroLoad& load,
              const LoadCurve& curve, const SolveControls& controls,
              double dt_rveout,
              const std::function<void(const FieldState&, double)>& snapshot_cb,
              double dt_field, std::vector<HomogenizedRecord>* partial_out) {
  curve.validate();
  if (controls.n_steps < 1) throw ParseError("n_steps must be >= 1");
  const int d = mesh.dim;
  const double t_end = load.end_time;
  const double eps = 1e-12 * std::max(1.0, t_end);

  RunResult result;
  FieldState& state = result.state;
  state.dim = d;
  state.w_fluct.assign(mesh.nodes.size() * d, 0.0);
  state.h_macro.assign(cs.n_macro_slots, 0.0);
  state.H = rebuild_H(cs, load, curve.eval(0.0), state.h_macro);

  result.records.push_back(record_at(mesh, mats, state, 0.0));
  if (snapshot_cb) snapshot_cb(state, 0.0);
  double next_out = dt_rveout > 0.0 ? dt_rveout : t_end;
  double next_field = dt_field > 0.0 ? dt_field : t_end;

  auto flush = [&]() {
    if (partial_out) *partial_out = result.records;
  };

  double t = 0.0;
  double dt = t_end / controls.n_steps;
  int step = 0;
  while (t < t_end - eps) {
    ++step;
    int cutbacks = 0;
    for (;;) {
      const double t_try = std::min(t + dt, t_end);
      FieldState backup = state;
      bool ok = false;
      std::string why;
      try {
        state.H = rebuild_H(cs, load, curve.eval(t_try), state.h_macro);
        Eigen::VectorXd r;
        Eigen::SparseMatrix<double> K;
        double r0 = -1.0;
        for (int it = 0; it <= controls.max_newton_iters; ++it) {
          assemble(mesh, mats, cs, state, r, &K);
          const double rn =
              std::sqrt(kernels::dot(r.data(), r.data(), r.size()));
          if (controls.verbose)
            std::fprintf(stderr, "step=%d t=%.6g it=%d r=%.6e\n", step, t_try,
                         it, rn);
          if (it == 0) r0 = rn;
          if (rn <= std::max(controls.newton_atol, controls.newton_rtol * r0)) {
            ok = true;
            break;
          }
          if (it == controls.max_newton_iters) {
            why = "newton iteration limit";
            break;
          }
          if (!std::isfinite(rn)) {
            why = "non-finite residual";
            break;
          }
          const Eigen::VectorXd delta = solve_linear(K, -r);
          apply_update(cs, delta, state);
          state.H = rebuild_H(cs, load, curve.eval(t_try), state.h_macro);
        }
      } catch (const InvertedElement& e) {
        why = e.what();
      } catch (const Error& e) {
        why = e.what();
      }
      if (ok) {
        t = t_try;
        break;
      }
      state = std::move(backup);
      if (++cutbacks > controls.max_cutbacks) {
        flush();
        throw NonConvergence("step " + std::to_string(step) +
                             " failed after " + std::to_string(cutbacks - 1) +
                             " cutbacks: " + why);
      }
      dt *= controls.divergence_cutback;
      if (controls.verbose)
        std::fprintf(stderr, "step=%d cutback dt=%.6g (%s)\n", step, dt,
                     why.c_str());
    }

    while (next_out <= t + eps) {
      result.records.push_back(record_at(mesh, mats, state, t));
      next_out += dt_rveout > 0.0 ? dt_rveout : t_end;
    }
    if (snapshot_cb) {
      while (next_field <= t + eps) {
        snapshot_cb(state, t);
        next_field += dt_field > 0.0 ? dt_field : t_end;
      }
    }
  }
  flush();
  return result;
}

}  // namespace rve
