#include "rve/constraints.hpp"

#include <cmath>
#include <limits>

namespace rve {

int MacroLoad::count_prescribed(int dim) const {
  int c = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (H[i][j].has_value()) ++c;
  return c;
}

Vec3 split_displacement(const Mat3& H, const Vec3& X, int dim) {
  Vec3 u = Vec3::Zero();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) u[i] += H(i, j) * X[j];
  return u;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  std::vector<Vec3> off;  // X_i - X_parent[i], accumulated

  explicit UnionFind(int n) : parent(n), off(n, Vec3::Zero()) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  // returns (root, X_i - X_root)
  std::pair<int, Vec3> find(int i) {
    if (parent[i] == i) return {i, Vec3::Zero()};
    auto [r, o] = find(parent[i]);
    parent[i] = r;
    off[i] += o;
    return {r, off[i]};
  }

  // enforce X_plus - X_minus = delta
  void unite(int plus, int minus, const Vec3& delta) {
    auto [ra, offa] = find(plus);
    auto [rb, offb] = find(minus);
    if (ra == rb) {
      if ((offa - offb - delta).norm() > 1e-6 * (1.0 + delta.norm()))
        throw Error("internal: cyclic inconsistency in periodic master chains");
      return;
    }
    parent[rb] = ra;
    off[rb] = offa - offb - delta;
  }
};

}  // namespace

MasterMap chain_corner_masters(const Mesh& mesh,
                               const std::vector<FacePairing>& pairings) {
  const int n = static_cast<int>(mesh.nodes.size());
  UnionFind uf(n);
  for (const FacePairing& fp : pairings) {
    Vec3 delta = Vec3::Zero();
    delta[fp.axis] = fp.span;
    for (auto [pid, mid] : fp.pairs)
      uf.unite(mesh.index_of(pid), mesh.index_of(mid), delta);
  }
  MasterMap mm;
  mm.master.resize(n);
  mm.offset.resize(n);
  for (int i = 0; i < n; ++i) {
    auto [r, o] = uf.find(i);
    mm.master[i] = r;
    mm.offset[i] = o;
  }
  return mm;
}

ConstraintSystem build_constraints(const Mesh& mesh,
                                   const std::vector<FacePairing>& pairings,
                                   const MacroLoad& load, BcKind kind) {
  const int d = mesh.dim;
  if (load.count_prescribed(d) == 0)
    throw ParseError("macro load: at least one H component must be prescribed");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (load.H[i][j] && !std::isfinite(*load.H[i][j]))
        throw ParseError("macro load: H targets must be finite");

  ConstraintSystem cs;
  cs.kind = kind;
  cs.dim = d;
  const int n = static_cast<int>(mesh.nodes.size());
  cs.dof_class.assign(n * d, DofClass::Unknown);
  cs.master_node.resize(n);
  for (int i = 0; i < n; ++i) cs.master_node[i] = i;

  const double tol = 1e-8 * mesh.bbox_diagonal();
  auto on_boundary = [&](const Vec3& X) {
    for (int a = 0; a < d; ++a)
      if (std::fabs(X[a] - mesh.bbox_min[a]) <= tol ||
          std::fabs(X[a] - mesh.bbox_max[a]) <= tol)
        return true;
    return false;
  };

  if (kind == BcKind::LDBC) {
    for (int i = 0; i < n; ++i)
      if (on_boundary(mesh.nodes[i].X))
        for (int k = 0; k < d; ++k) cs.dof_class[i * d + k] = DofClass::Fixed;
  } else {
    MasterMap mm = chain_corner_masters(mesh, pairings);

    // The class holding the lowest-id corner node is pinned (rigid
    // translation removal).
    int corner_root = -1;
    int corner_id = std::numeric_limits<int>::max();
    for (int i = 0; i < n; ++i) {
      const Vec3& X = mesh.nodes[i].X;
      bool corner = true;
      for (int a = 0; a < d; ++a)
        corner = corner && (std::fabs(X[a] - mesh.bbox_min[a]) <= tol ||
                            std::fabs(X[a] - mesh.bbox_max[a]) <= tol);
      if (corner && mesh.nodes[i].id < corner_id) {
        corner_id = mesh.nodes[i].id;
        corner_root = mm.master[i];
      }
    }
    if (corner_root < 0) throw Error("internal: RVE box has no corner node");

    for (int i = 0; i < n; ++i) {
      cs.master_node[i] = mm.master[i];
      if (mm.master[i] == corner_root) {
        for (int k = 0; k < d; ++k) cs.dof_class[i * d + k] = DofClass::Fixed;
      } else if (mm.master[i] != i) {
        for (int k = 0; k < d; ++k) cs.dof_class[i * d + k] = DofClass::Eliminated;
      }
    }
  }

  // Reduced numbering: fluctuation unknowns first, macro slots appended.
  cs.reduced_index.assign(n * d, -1);
  int next = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k)
      if (cs.dof_class[i * d + k] == DofClass::Unknown)
        cs.reduced_index[i * d + k] = next++;
  cs.n_fluct = next;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k)
      if (cs.dof_class[i * d + k] == DofClass::Eliminated)
        cs.reduced_index[i * d + k] =
            cs.reduced_index[cs.master_node[i] * d + k];

  // Free H entries; simultaneously-free transposed partners share a slot.
  int slot_of[3][3];
  for (auto& row : slot_of)
    for (int& s : row) s = -1;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (load.prescribed(i, j)) continue;
      int slot;
      if (i != j && !load.prescribed(j, i) && slot_of[j][i] >= 0) {
        slot = slot_of[j][i];
      } else {
        slot = cs.n_macro_slots++;
      }
      slot_of[i][j] = slot;
      cs.free_entries.push_back({i, j, slot});
    }
  return cs;
}

}  // namespace rve
