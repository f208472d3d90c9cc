#include "rve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rve/fem.hpp"
#include "rve/kernels.hpp"

namespace rve {

int Mesh::index_of(int node_id) const {
  auto it = node_index.find(node_id);
  if (it == node_index.end())
    throw ParseError("dangling connectivity: node " + std::to_string(node_id) +
                     " does not exist");
  return it->second;
}

double Mesh::bbox_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) v *= bbox_max[i] - bbox_min[i];
  return v;
}

double Mesh::bbox_diagonal() const {
  return (bbox_max - bbox_min).head(dim).norm();
}

void Mesh::validate() {
  if (dim != 2 && dim != 3) throw ParseError("mesh dimension must be 2 or 3");
  node_index.clear();
  node_index.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id <= 0) throw ParseError("node ids must be positive");
    if (!node_index.emplace(nodes[i].id, static_cast<int>(i)).second)
      throw ParseError("duplicate node id " + std::to_string(nodes[i].id));
  }
  if (nodes.empty() || elements.empty())
    throw ParseError("mesh needs at least one node and one element");

  const int want_nen = dim == 2 ? 4 : 8;
  for (const Element& el : elements) {
    if (el.nen != want_nen)
      throw ParseError("element " + std::to_string(el.id) +
                       ": connectivity length does not match dimension");
    for (int a = 0; a < el.nen; ++a) index_of(el.conn[a]);
  }

  bbox_min = Vec3::Constant(std::numeric_limits<double>::max());
  bbox_max = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (const Node& n : nodes)
    for (int i = 0; i < dim; ++i) {
      bbox_min[i] = std::min(bbox_min[i], n.X[i]);
      bbox_max[i] = std::max(bbox_max[i], n.X[i]);
    }
  if (dim == 2) bbox_min[2] = bbox_max[2] = 0.0;

  // Jacobian sign check and volume, batched over all quadrature points.
  const QuadratureRule& rule = quadrature(dim);
  std::array<double, 8> N;
  std::array<Vec3, 8> dN_dxi;
  std::vector<double> jmats(elements.size() * rule.nqp * 9);
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const Element& el = elements[e];
    for (int q = 0; q < rule.nqp; ++q) {
      shape_functions(dim, rule.xi[q], N, dN_dxi);
      Mat3 J = Mat3::Identity();
      J.topLeftCorner(dim, dim).setZero();
      for (int a = 0; a < el.nen; ++a) {
        const Vec3& Xa = nodes[index_of(el.conn[a])].X;
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) J(i, j) += Xa[i] * dN_dxi[a][j];
      }
      double* dst = jmats.data() + (e * rule.nqp + q) * 9;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dst[3 * i + j] = J(i, j);
    }
  }
  std::vector<double> dets(elements.size() * rule.nqp);
  kernels::batch_det3(jmats.data(), dets.size(), dets.data());
  volume = 0.0;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    for (int q = 0; q < rule.nqp; ++q) {
      const double dJ = dets[e * rule.nqp + q];
      if (dJ <= 0.0) {
        // Re-run the per-element path to recover the qp location.
        std::array<QPGeometry, 8> geo;
        element_geometry(*this, elements[e], geo);
      }
      volume += rule.weight[q] * dJ;
    }
  }

  const double bv = bbox_volume();
  if (!(volume > 0.0) || std::fabs(volume - bv) > 1e-8 * bv)
    throw ParseError("mesh does not tile its bounding box: sum of element "
                     "volumes " + std::to_string(volume) + " vs box volume " +
                     std::to_string(bv));
}

Mesh make_mesh(int dim, std::vector<Node> nodes, std::vector<Element> elements) {
  Mesh m;
  m.dim = dim;
  m.nodes = std::move(nodes);
  m.elements = std::move(elements);
  m.validate();
  return m;
}

Mesh generate_voxel_sphere(int n_per_side, double radius_fraction,
                           int matrix_part, int inclusion_part) {
  if (n_per_side < 1) throw ParseError("voxel sphere: n_per_side must be >= 1");
  if (!(radius_fraction > 0.0 && radius_fraction < 0.5))
    throw ParseError("voxel sphere: radius_fraction must be in (0, 0.5)");
  const int n = n_per_side;
  const double h = 1.0 / n;
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1));
  auto nid = [n](int i, int j, int k) {
    return 1 + i + (n + 1) * (j + (n + 1) * k);
  };
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        nodes.push_back({nid(i, j, k), Vec3(i * h, j * h, k * h)});

  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(n) * n * n);
  const Vec3 center(0.5, 0.5, 0.5);
  int eid = 1;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        Element el;
        el.id = eid++;
        const Vec3 centroid((i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h);
        el.part_id = (centroid - center).norm() < radius_fraction
                         ? inclusion_part
                         : matrix_part;
        el.conn = {nid(i, j, k),         nid(i + 1, j, k),
                   nid(i + 1, j + 1, k), nid(i, j + 1, k),
                   nid(i, j, k + 1),     nid(i + 1, j, k + 1),
                   nid(i + 1, j + 1, k + 1), nid(i, j + 1, k + 1)};
        el.nen = 8;
        elements.push_back(el);
      }
  return make_mesh(3, std::move(nodes), std::move(elements));
}

Mesh generate_laminate_2d(int n_x, int n_y, double phase1_fraction,
                          int part1, int part2) {
  if (n_x < 2 || n_y < 2) throw ParseError("laminate: n_x and n_y must be >= 2");
  if (!(phase1_fraction > 0.0 && phase1_fraction < 1.0))
    throw ParseError("laminate: phase1_fraction must be in (0, 1)");
  const double cols = phase1_fraction * n_x;
  const int n1 = static_cast<int>(std::lround(cols));
  if (std::fabs(cols - n1) > 1e-9 || n1 < 1 || n1 >= n_x)
    throw ParseError("laminate: phase1_fraction is not resolvable on an " +
                     std::to_string(n_x) + "-column grid");
  const double hx = 1.0 / n_x, hy = 1.0 / n_y;
  auto nid = [n_x](int i, int j) { return 1 + i + (n_x + 1) * j; };
  std::vector<Node> nodes;
  for (int j = 0; j <= n_y; ++j)
    for (int i = 0; i <= n_x; ++i)
      nodes.push_back({nid(i, j), Vec3(i * hx, j * hy, 0.0)});
  std::vector<Element> elements;
  int eid = 1;
  for (int j = 0; j < n_y; ++j)
    for (int i = 0; i < n_x; ++i) {
      Element el;
      el.id = eid++;
      el.part_id = i < n1 ? part1 : part2;
      el.conn = {nid(i, j), nid(i + 1, j), nid(i + 1, j + 1), nid(i, j + 1),
                 0, 0, 0, 0};
      el.nen = 4;
      elements.push_back(el);
    }
  return make_mesh(2, std::move(nodes), std::move(elements));
}

std::vector<FacePairing> pair_periodic_nodes(const Mesh& mesh, double geom_tol) {
  const double tol = geom_tol > 0.0 ? geom_tol : 1e-8 * mesh.bbox_diagonal();
  std::vector<FacePairing> out;
  for (int axis = 0; axis < mesh.dim; ++axis) {
    FacePairing fp;
    fp.axis = axis;
    fp.span = mesh.bbox_max[axis] - mesh.bbox_min[axis];

    // transverse axes
    std::array<int, 2> t{};
    int nt = 0;
    for (int i = 0; i < mesh.dim; ++i)
      if (i != axis) t[nt++] = i;

    struct Entry {
      double c0, c1;
      int id;
    };
    std::vector<Entry> minus;
    std::vector<int> plus;
    for (const Node& n : mesh.nodes) {
      if (std::fabs(n.X[axis] - mesh.bbox_min[axis]) <= tol)
        minus.push_back({n.X[t[0]], nt > 1 ? n.X[t[1]] : 0.0, n.id});
      if (std::fabs(n.X[axis] - mesh.bbox_max[axis]) <= tol) plus.push_back(n.id);
    }
    std::sort(minus.begin(), minus.end(), [](const Entry& a, const Entry& b) {
      if (a.c0 != b.c0) return a.c0 < b.c0;
      return a.c1 < b.c1;
    });
    std::sort(plus.begin(), plus.end());

    for (int pid : plus) {
      const Vec3& Xp = mesh.nodes[mesh.node_index.at(pid)].X;
      const double c0 = Xp[t[0]], c1 = nt > 1 ? Xp[t[1]] : 0.0;
      // all candidates with c0 in [c0-tol, c0+tol]
      auto lo = std::lower_bound(minus.begin(), minus.end(), c0 - tol,
                                 [](const Entry& e, double v) { return e.c0 < v; });
      int found = -1;
      for (auto it = lo; it != minus.end() && it->c0 <= c0 + tol; ++it) {
        if (std::fabs(it->c1 - c1) <= tol) {
          found = it->id;
          break;
        }
      }
      if (found < 0)
        throw MatchFailure("no periodic partner for node " +
                               std::to_string(pid) + " on axis " +
                               std::to_string(axis + 1),
                           pid, axis + 1);
      fp.pairs.emplace_back(pid, found);
    }
    if (fp.pairs.size() != minus.size())
      throw MatchFailure("plus/minus face node counts differ on axis " +
                             std::to_string(axis + 1),
                         minus.empty() ? -1 : minus.front().id, axis + 1);
    out.push_back(std::move(fp));
  }
  return out;
}

}  // namespace rve
