#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "rve/common.hpp"

namespace rve {

struct Node {
  int id = 0;
  Vec3 X = Vec3::Zero();  // third component unused in 2D
};

struct Element {
  int id = 0;
  int part_id = 0;
  std::array<int, 8> conn{};  // node ids; first nen entries valid
  int nen = 0;                // 4 for quad4, 8 for hex8
};

// Immutable after construction (validate() is the last mutation).
struct Mesh {
  int dim = 3;
  std::vector<Node> nodes;
  std::vector<Element> elements;
  Vec3 bbox_min = Vec3::Zero();
  Vec3 bbox_max = Vec3::Zero();
  double volume = 0.0;

  std::unordered_map<int, int> node_index;  // id -> position in nodes

  int index_of(int node_id) const;
  double bbox_volume() const;
  double bbox_diagonal() const;

  // Computes bbox/volume, checks invariants (unique ids, connectivity,
  // positive Jacobians, box tiling). Throws ParseError / InvertedElement.
  void validate();
};

// Matched plus/minus boundary nodes for one coordinate axis.
struct FacePairing {
  int axis = 0;                            // 0-based
  std::vector<std::pair<int, int>> pairs;  // (node_id_plus, node_id_minus)
  double span = 0.0;
};

Mesh make_mesh(int dim, std::vector<Node> nodes, std::vector<Element> elements);

// Unit-cube voxel grid of n^3 hex8 elements; a voxel belongs to the
// inclusion part iff its centroid is inside the centered sphere of radius
// radius_fraction.
Mesh generate_voxel_sphere(int n_per_side, double radius_fraction,
                           int matrix_part = 1, int inclusion_part = 2);

// Unit-square quad4 grid; columns with x-index < phase1_fraction*n_x get
// part 1, the remainder part 2.
Mesh generate_laminate_2d(int n_x, int n_y, double phase1_fraction,
                          int part1 = 1, int part2 = 2);

// Matches every node on face X_axis = bbox_max[axis] with the node on the
// opposite face that agrees in the transverse coordinates. Throws
// MatchFailure on the first node without a partner. geom_tol <= 0 selects
// the default 1e-8 * bbox diagonal.
std::vector<FacePairing> pair_periodic_nodes(const Mesh& mesh,
                                             double geom_tol = -1.0);

}  // namespace rve
