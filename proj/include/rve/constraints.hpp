#pragma once

#include <optional>
#include <vector>

#include "rve/mesh.hpp"

namespace rve {

enum class BcKind { PDBC, LDBC };

// Prescribed/free status of the macroscopic displacement gradient. An
// empty optional means the component is free (reacted by zero average
// PK1); for 2D only the leading 2x2 block is read.
struct MacroLoad {
  std::optional<double> H[3][3];
  int lcid = 1;
  double end_time = 1.0;

  bool prescribed(int i, int j) const { return H[i][j].has_value(); }
  int count_prescribed(int dim) const;
};

enum class DofClass { Unknown, Eliminated, Fixed };

// Reduced-system bookkeeping for the affine/fluctuation split: the total
// displacement is u = H*X + w~, and the constraints act on w~ only (LDBC:
// w~ = 0 on the boundary; PDBC: w~ equal across periodic partners).
struct ConstraintSystem {
  BcKind kind = BcKind::PDBC;
  int dim = 3;

  std::vector<DofClass> dof_class;  // per node_idx*dim + dir
  std::vector<int> master_node;     // canonical master node index, or self
  std::vector<int> reduced_index;   // >= 0 for each dof with an unknown; -1 if fixed
  int n_fluct = 0;

  // A free H entry and the reduced-system slot carrying it. Two
  // simultaneously-free transposed shear entries share one slot (the
  // macroscopic spin is constrained to zero).
  struct FreeEntry {
    int i = 0, j = 0;
    int slot = 0;  // 0-based among macro slots
  };
  std::vector<FreeEntry> free_entries;
  int n_macro_slots = 0;

  int n_unknowns() const { return n_fluct + n_macro_slots; }
  int macro_col(int slot) const { return n_fluct + slot; }

  // Reduced index the dof maps to (possibly through its master); -1 fixed.
  int dof_reduced(int node_idx, int dir) const {
    return reduced_index[node_idx * dim + dir];
  }
};

// Affine part H*X of the microscopic displacement.
Vec3 split_displacement(const Mat3& H, const Vec3& X, int dim);

// Union-find over the face pairings: every boundary node gets a canonical
// master and an accumulated coordinate offset X_node - X_master. Offsets
// are path independent on a valid box mesh.
struct MasterMap {
  std::vector<int> master;   // per node index, canonical master node index
  std::vector<Vec3> offset;  // X_node - X_master along the chain
};
MasterMap chain_corner_masters(const Mesh& mesh,
                               const std::vector<FacePairing>& pairings);

ConstraintSystem build_constraints(const Mesh& mesh,
                                   const std::vector<FacePairing>& pairings,
                                   const MacroLoad& load, BcKind kind);

}  // namespace rve
