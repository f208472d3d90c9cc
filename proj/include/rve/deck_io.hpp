#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "rve/homogenize.hpp"
#include "rve/state.hpp"

namespace rve {

// *RVE_ANALYSIS_FEM card. Blank H entries are free; the six-entry card
// line covers H11,H22,H33,H12,H23,H13, the optional fourth line
// H21,H32,H31.
struct RveCard {
  std::string mesh_file;
  int inpt = 0;
  int oupt = 1;
  int lcid = 1;
  int idof = 3;
  int bc = 0;  // 0 PDBC, 1 LDBC
  int imatch = 1;
  std::optional<double> H[3][3];
};

struct SolutionOverrides {
  std::optional<int> n_steps;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<int> max_iters;
};

struct Deck {
  std::vector<Node> nodes;        // inline or merged from mesh_file
  std::vector<Element> elements;  // solids are hex8, shells quad4
  std::map<int, int> part_material;            // part id -> material id
  std::map<int, MaterialModel> materials;      // material id -> model
  RveCard card;
  std::map<int, LoadCurve> curves;
  double end_time = 1.0;
  double dt_rveout = 0.0;
  double dt_field = 0.0;
  SolutionOverrides controls;
};

// Parses deck text (keyword grammar; '$' comments, '*' keywords,
// comma- or whitespace-separated fields). Does not resolve mesh_file.
Deck parse_deck(const std::string& text);

// Parses a deck file and, if the RVE card names a mesh file, loads its
// node/element records relative to the deck's directory.
Deck parse_deck_file(const std::string& path);

// Canonical keyword emission; parse_deck(print_deck(d)) reproduces d.
std::string print_deck(const Deck& deck);

bool deck_equal(const Deck& a, const Deck& b);

// Derived objects.
Mesh build_mesh(const Deck& deck);
MaterialMap build_materials(const Deck& deck);
MacroLoad build_macro_load(const Deck& deck);
SolveControls build_controls(const Deck& deck);
BcKind bc_kind(const Deck& deck);

// Fortran-style normalized scientific field: mantissa in [0.1,1), 10
// mantissa digits, two-digit signed exponent, leading blank or minus.
std::string format_field(double v);

void write_rveout(const std::vector<HomogenizedRecord>& records,
                  std::ostream& os);

// Legacy-ASCII unstructured-grid snapshot: points, cells, nodal
// displacement vectors, per-element volume-averaged von Mises stress.
void write_field_snapshot(const Mesh& mesh, const MaterialMap& mats,
                          const FieldState& state, double time,
                          const std::string& path);

// Mesh-only keyword file (*NODE / *ELEMENT_...), as produced by the
// microstructure generators.
void write_mesh_keyword_file(const Mesh& mesh, const std::string& path);

}  // namespace rve
