#include "rve/deck_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rve/kernels.hpp"
#include "rve/solver.hpp"

namespace rve {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string::npos) {
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        out.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(trim(cur));
  } else {
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
  }
  return out;
}

struct DataLine {
  std::vector<std::string> fields;
  std::string raw;
  int lineno = 0;

  bool has(std::size_t i) const { return i < fields.size() && !fields[i].empty(); }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  }
  int geti(std::size_t i) const {
    if (!has(i)) fail("missing integer field " + std::to_string(i + 1));
    try {
      std::size_t pos = 0;
      int v = std::stoi(fields[i], &pos);
      if (pos != fields[i].size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail("bad integer '" + fields[i] + "'");
    }
  }
  int geti_or(std::size_t i, int def) const { return has(i) ? geti(i) : def; }
  double getd(std::size_t i) const {
    if (!has(i)) fail("missing numeric field " + std::to_string(i + 1));
    try {
      std::size_t pos = 0;
      double v = std::stod(fields[i], &pos);
      if (pos != fields[i].size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail("bad number '" + fields[i] + "'");
    }
  }
  double getd_or(std::size_t i, double def) const {
    return has(i) ? getd(i) : def;
  }
  std::optional<double> getd_opt(std::size_t i) const {
    if (!has(i)) return std::nullopt;
    return getd(i);
  }
};

bool looks_numeric(const std::string& s) {
  try {
    std::size_t pos = 0;
    (void)std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

struct Block {
  std::string keyword;
  int lineno = 0;
  std::vector<DataLine> data;
};

std::vector<Block> lex_blocks(const std::string& text) {
  std::vector<Block> blocks;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  Block* cur = nullptr;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '$') continue;
    if (t[0] == '*') {
      std::string kw = t.substr(1);
      std::transform(kw.begin(), kw.end(), kw.begin(),
                     [](unsigned char c) { return std::toupper(c); });
      kw = trim(kw);
      blocks.push_back({kw, lineno, {}});
      cur = &blocks.back();
      if (kw == "END") break;
      continue;
    }
    if (!cur)
      throw ParseError("line " + std::to_string(lineno) +
                       ": data before any keyword");
    cur->data.push_back({split_fields(t), t, lineno});
  }
  return blocks;
}

void parse_rve_card(const Block& b, Deck& deck) {
  RveCard& c = deck.card;
  std::size_t k = 0;
  if (b.data.empty())
    throw ParseError("line " + std::to_string(b.lineno) +
                     ": *RVE_ANALYSIS_FEM card is empty");
  // first data line is the mesh file name unless it is purely numeric
  if (!looks_numeric(b.data[0].fields.empty() ? "" : b.data[0].fields[0])) {
    c.mesh_file = trim(b.data[0].raw);
    k = 1;
  }
  if (k >= b.data.size()) b.data.back().fail("missing RVE control line");
  const DataLine& ctl = b.data[k];
  c.inpt = ctl.geti_or(0, 0);
  c.oupt = ctl.geti_or(1, 1);
  c.lcid = ctl.geti_or(2, 1);
  c.idof = ctl.geti_or(3, 3);
  c.bc = ctl.geti_or(4, 0);
  c.imatch = ctl.geti_or(5, 1);
  if (c.inpt != 0)
    ctl.fail("inpt must be 0 (automatic boundary constraint setup)");
  if (c.oupt != 0 && c.oupt != 1) ctl.fail("oupt must be 0 or 1");
  if (c.idof != 2 && c.idof != 3) ctl.fail("idof must be 2 or 3");
  if (c.bc != 0 && c.bc != 1) ctl.fail("bc must be 0 (PDBC) or 1 (LDBC)");
  if (c.imatch != 1)
    ctl.fail("imatch must be 1 (only PDBC-matching meshes are supported)");

  for (auto& row : c.H)
    for (auto& e : row) e.reset();
  // H11 H22 H33 H12 H23 H13, then optionally H21 H32 H31
  static constexpr int line3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}};
  static constexpr int line4[3][2] = {{1, 0}, {2, 1}, {2, 0}};
  if (k + 1 < b.data.size()) {
    const DataLine& h = b.data[k + 1];
    for (int i = 0; i < 6; ++i)
      c.H[line3[i][0]][line3[i][1]] = h.getd_opt(i);
  }
  if (k + 2 < b.data.size()) {
    const DataLine& h = b.data[k + 2];
    for (int i = 0; i < 3; ++i)
      c.H[line4[i][0]][line4[i][1]] = h.getd_opt(i);
  }
  if (k + 3 < b.data.size()) b.data[k + 3].fail("unexpected extra card line");
}

}  // namespace

Deck parse_deck(const std::string& text) {
  Deck deck;
  bool saw_card = false;
  for (const Block& b : lex_blocks(text)) {
    if (b.keyword == "NODE") {
      for (const DataLine& dl : b.data) {
        Node n;
        n.id = dl.geti(0);
        n.X = Vec3(dl.getd(1), dl.getd_or(2, 0.0), dl.getd_or(3, 0.0));
        deck.nodes.push_back(n);
      }
    } else if (b.keyword == "ELEMENT_SOLID" || b.keyword == "ELEMENT_SHELL") {
      const int nen = b.keyword == "ELEMENT_SOLID" ? 8 : 4;
      for (const DataLine& dl : b.data) {
        Element el;
        el.id = dl.geti(0);
        el.part_id = dl.geti(1);
        el.nen = nen;
        for (int a = 0; a < nen; ++a) el.conn[a] = dl.geti(2 + a);
        deck.elements.push_back(el);
      }
    } else if (b.keyword == "PART") {
      for (const DataLine& dl : b.data)
        deck.part_material[dl.geti(0)] = dl.geti(1);
    } else if (b.keyword == "MAT_ELASTIC") {
      for (const DataLine& dl : b.data)
        deck.materials.emplace(dl.geti(0),
                               MaterialModel::linear_elastic(dl.getd(1), dl.getd(2)));
    } else if (b.keyword == "MAT_MOONEY_RIVLIN") {
      for (const DataLine& dl : b.data)
        deck.materials.emplace(
            dl.geti(0),
            MaterialModel::mooney_rivlin(dl.getd(1), dl.getd(2), dl.getd(3)));
    } else if (b.keyword == "RVE_ANALYSIS_FEM") {
      parse_rve_card(b, deck);
      saw_card = true;
    } else if (b.keyword == "DEFINE_CURVE") {
      if (b.data.empty())
        throw ParseError("line " + std::to_string(b.lineno) +
                         ": *DEFINE_CURVE needs an id line");
      LoadCurve lc;
      lc.id = b.data[0].geti(0);
      for (std::size_t i = 1; i < b.data.size(); ++i)
        lc.points.emplace_back(b.data[i].getd(0), b.data[i].getd(1));
      lc.validate();
      deck.curves[lc.id] = lc;
    } else if (b.keyword == "CONTROL_TERMINATION") {
      if (b.data.empty())
        throw ParseError("line " + std::to_string(b.lineno) +
                         ": *CONTROL_TERMINATION needs endtim");
      deck.end_time = b.data[0].getd(0);
    } else if (b.keyword == "CONTROL_SOLUTION") {
      if (!b.data.empty()) {
        const DataLine& dl = b.data[0];
        if (dl.has(0)) deck.controls.n_steps = dl.geti(0);
        if (dl.has(1)) deck.controls.rtol = dl.getd(1);
        if (dl.has(2)) deck.controls.atol = dl.getd(2);
        if (dl.has(3)) deck.controls.max_iters = dl.geti(3);
      }
    } else if (b.keyword == "DATABASE_RVE") {
      if (!b.data.empty()) deck.dt_rveout = b.data[0].getd(0);
    } else if (b.keyword == "DATABASE_FIELD") {
      if (!b.data.empty()) deck.dt_field = b.data[0].getd(0);
    } else if (b.keyword == "END") {
      break;
    } else {
      throw ParseError("line " + std::to_string(b.lineno) +
                       ": unknown keyword *" + b.keyword);
    }
  }
  if (saw_card && deck.curves.find(deck.card.lcid) == deck.curves.end())
    throw ParseError("*RVE_ANALYSIS_FEM references load curve " +
                     std::to_string(deck.card.lcid) +
                     " which is not defined");
  return deck;
}

Deck parse_deck_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open deck file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Deck deck = parse_deck(ss.str());
  if (!deck.card.mesh_file.empty()) {
    const auto mesh_path =
        std::filesystem::path(path).parent_path() / deck.card.mesh_file;
    std::ifstream min(mesh_path);
    if (!min) throw IoError("cannot open mesh file: " + mesh_path.string());
    std::stringstream ms;
    ms << min.rdbuf();
    Deck mesh_deck = parse_deck(ms.str());
    deck.nodes.insert(deck.nodes.end(), mesh_deck.nodes.begin(),
                      mesh_deck.nodes.end());
    deck.elements.insert(deck.elements.end(), mesh_deck.elements.begin(),
                         mesh_deck.elements.end());
  }
  return deck;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string print_deck(const Deck& deck) {
  std::ostringstream os;
  if (!deck.nodes.empty()) {
    os << "*NODE\n";
    for (const Node& n : deck.nodes)
      os << n.id << ", " << num(n.X[0]) << ", " << num(n.X[1]) << ", "
         << num(n.X[2]) << "\n";
  }
  bool any_solid = false, any_shell = false;
  for (const Element& el : deck.elements)
    (el.nen == 8 ? any_solid : any_shell) = true;
  for (int pass = 0; pass < 2; ++pass) {
    const int nen = pass == 0 ? 8 : 4;
    if ((pass == 0 && !any_solid) || (pass == 1 && !any_shell)) continue;
    os << (nen == 8 ? "*ELEMENT_SOLID\n" : "*ELEMENT_SHELL\n");
    for (const Element& el : deck.elements) {
      if (el.nen != nen) continue;
      os << el.id << ", " << el.part_id;
      for (int a = 0; a < el.nen; ++a) os << ", " << el.conn[a];
      os << "\n";
    }
  }
  if (!deck.part_material.empty()) {
    os << "*PART\n";
    for (auto [pid, mid] : deck.part_material) os << pid << ", " << mid << "\n";
  }
  for (const auto& [mid, mat] : deck.materials) {
    if (mat.kind() == MaterialKind::LinearElastic) {
      const double mu = mat.mu(), la = mat.lambda();
      const double E = mu * (3.0 * la + 2.0 * mu) / (la + mu);
      const double nu = la / (2.0 * (la + mu));
      os << "*MAT_ELASTIC\n" << mid << ", " << num(E) << ", " << num(nu) << "\n";
    } else {
      os << "*MAT_MOONEY_RIVLIN\n"
         << mid << ", " << num(mat.c10()) << ", " << num(mat.c01()) << ", "
         << num(mat.bulk()) << "\n";
    }
  }
  const RveCard& c = deck.card;
  os << "*RVE_ANALYSIS_FEM\n";
  if (!c.mesh_file.empty()) os << c.mesh_file << "\n";
  os << c.inpt << ", " << c.oupt << ", " << c.lcid << ", " << c.idof << ", "
     << c.bc << ", " << c.imatch << "\n";
  static constexpr int line3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}};
  static constexpr int line4[3][2] = {{1, 0}, {2, 1}, {2, 0}};
  for (int i = 0; i < 6; ++i) {
    const auto& e = c.H[line3[i][0]][line3[i][1]];
    os << (e ? num(*e) : "") << (i + 1 < 6 ? ", " : "\n");
  }
  bool any4 = false;
  for (auto [i, j] : line4) any4 = any4 || c.H[i][j].has_value();
  if (any4) {
    for (int i = 0; i < 3; ++i) {
      const auto& e = c.H[line4[i][0]][line4[i][1]];
      os << (e ? num(*e) : "") << (i + 1 < 3 ? ", " : "\n");
    }
  }
  for (const auto& [id, lc] : deck.curves) {
    os << "*DEFINE_CURVE\n" << id << "\n";
    for (auto [t, v] : lc.points) os << num(t) << ", " << num(v) << "\n";
  }
  os << "*CONTROL_TERMINATION\n" << num(deck.end_time) << "\n";
  const SolutionOverrides& so = deck.controls;
  if (so.n_steps || so.rtol || so.atol || so.max_iters) {
    os << "*CONTROL_SOLUTION\n";
    os << (so.n_steps ? std::to_string(*so.n_steps) : "") << ", "
       << (so.rtol ? num(*so.rtol) : "") << ", "
       << (so.atol ? num(*so.atol) : "") << ", "
       << (so.max_iters ? std::to_string(*so.max_iters) : "") << "\n";
  }
  if (deck.dt_rveout > 0.0) os << "*DATABASE_RVE\n" << num(deck.dt_rveout) << "\n";
  if (deck.dt_field > 0.0) os << "*DATABASE_FIELD\n" << num(deck.dt_field) << "\n";
  os << "*END\n";
  return os.str();
}

namespace {

bool mat_equal(const MaterialModel& a, const MaterialModel& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == MaterialKind::LinearElastic)
    return a.lambda() == b.lambda() && a.mu() == b.mu();
  return a.c10() == b.c10() && a.c01() == b.c01() && a.bulk() == b.bulk();
}

}  // namespace

bool deck_equal(const Deck& a, const Deck& b) {
  if (a.nodes.size() != b.nodes.size() || a.elements.size() != b.elements.size())
    return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    if (a.nodes[i].id != b.nodes[i].id || a.nodes[i].X != b.nodes[i].X)
      return false;
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    const Element &x = a.elements[i], &y = b.elements[i];
    if (x.id != y.id || x.part_id != y.part_id || x.nen != y.nen ||
        x.conn != y.conn)
      return false;
  }
  if (a.part_material != b.part_material) return false;
  if (a.materials.size() != b.materials.size()) return false;
  for (const auto& [mid, mat] : a.materials) {
    auto it = b.materials.find(mid);
    if (it == b.materials.end() || !mat_equal(mat, it->second)) return false;
  }
  const RveCard &ca = a.card, &cb = b.card;
  if (ca.mesh_file != cb.mesh_file || ca.inpt != cb.inpt || ca.oupt != cb.oupt ||
      ca.lcid != cb.lcid || ca.idof != cb.idof || ca.bc != cb.bc ||
      ca.imatch != cb.imatch)
    return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (ca.H[i][j] != cb.H[i][j]) return false;
  if (a.curves.size() != b.curves.size()) return false;
  for (const auto& [id, lc] : a.curves) {
    auto it = b.curves.find(id);
    if (it == b.curves.end() || lc.points != it->second.points) return false;
  }
  return a.end_time == b.end_time && a.dt_rveout == b.dt_rveout &&
         a.dt_field == b.dt_field &&
         a.controls.n_steps == b.controls.n_steps &&
         a.controls.rtol == b.controls.rtol &&
         a.controls.atol == b.controls.atol &&
         a.controls.max_iters == b.controls.max_iters;
}

Mesh build_mesh(const Deck& deck) {
  const int dim = deck.card.idof;
  const int want = dim == 2 ? 4 : 8;
  for (const Element& el : deck.elements)
    if (el.nen != want)
      throw ParseError("idof=" + std::to_string(dim) +
                       " is inconsistent with the element types in the mesh");
  return make_mesh(dim, deck.nodes, deck.elements);
}

MaterialMap build_materials(const Deck& deck) {
  MaterialMap mats;
  for (auto [pid, mid] : deck.part_material) {
    auto it = deck.materials.find(mid);
    if (it == deck.materials.end())
      throw ParseError("part " + std::to_string(pid) +
                       " references undefined material " + std::to_string(mid));
    mats.emplace(pid, it->second);
  }
  for (const Element& el : deck.elements)
    if (mats.find(el.part_id) == mats.end())
      throw ParseError("no *PART/material assignment for part " +
                       std::to_string(el.part_id));
  return mats;
}

MacroLoad build_macro_load(const Deck& deck) {
  MacroLoad load;
  const int d = deck.card.idof;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) load.H[i][j] = deck.card.H[i][j];
  load.lcid = deck.card.lcid;
  load.end_time = deck.end_time;
  return load;
}

SolveControls build_controls(const Deck& deck) {
  SolveControls c;
  if (deck.controls.n_steps) c.n_steps = *deck.controls.n_steps;
  if (deck.controls.rtol) c.newton_rtol = *deck.controls.rtol;
  if (deck.controls.atol) c.newton_atol = *deck.controls.atol;
  if (deck.controls.max_iters) c.max_newton_iters = *deck.controls.max_iters;
  return c;
}

BcKind bc_kind(const Deck& deck) {
  return deck.card.bc == 0 ? BcKind::PDBC : BcKind::LDBC;
}

std::string format_field(double v) {
  if (v == 0.0) return " 0.0000000000E+00";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9E", std::fabs(v));
  std::string digits;
  digits += buf[0];
  digits.append(buf + 2, 9);
  const int exp = std::atoi(std::strchr(buf, 'E') + 1) + 1;
  char out[32];
  std::snprintf(out, sizeof out, "%c0.%sE%+03d", v < 0.0 ? '-' : ' ',
                digits.c_str(), exp);
  return out;
}

namespace {

double clamp_small(double v, double threshold) {
  return std::fabs(v) < threshold ? 0.0 : v;
}

void write_tensor_line(std::ostream& os, char label, const Mat3& T,
                       const int (*idx)[2], int n, double threshold) {
  for (int k = 0; k < n; ++k) {
    const int i = idx[k][0], j = idx[k][1];
    if (k) os << "  ";
    os << label << i + 1 << j + 1 << '='
       << format_field(clamp_small(T(i, j), threshold));
  }
  os << "\n";
}

}  // namespace

void write_rveout(const std::vector<HomogenizedRecord>& records,
                  std::ostream& os) {
  static constexpr int main6[6][2] = {{0, 0}, {1, 1}, {2, 2},
                                      {0, 1}, {1, 2}, {2, 0}};
  static constexpr int rest3[3][2] = {{1, 0}, {2, 1}, {0, 2}};
  for (const HomogenizedRecord& r : records) {
    const double thF = 1e-10 * r.F_bar.cwiseAbs().maxCoeff();
    const double thE = 1e-10 * r.E_bar.cwiseAbs().maxCoeff();
    const double thP = 1e-10 * r.P_bar.cwiseAbs().maxCoeff();
    os << "time=" << format_field(r.time) << "\n";
    os << "deformation gradient F, Green strain E, PK1 stress P\n";
    write_tensor_line(os, 'F', r.F_bar, main6, 6, thF);
    write_tensor_line(os, 'E', r.E_bar, main6, 6, thE);
    write_tensor_line(os, 'P', r.P_bar, main6, 6, thP);
    // remaining off-diagonal components on one line
    const Mat3* mats[3] = {&r.F_bar, &r.E_bar, &r.P_bar};
    const double ths[3] = {thF, thE, thP};
    const char labels[3] = {'F', 'E', 'P'};
    bool first = true;
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 3; ++k) {
        const int i = rest3[k][0], j = rest3[k][1];
        if (!first) os << "  ";
        first = false;
        os << labels[m] << i + 1 << j + 1 << '='
           << format_field(clamp_small((*mats[m])(i, j), ths[m]));
      }
    os << "\n";
  }
}

void write_field_snapshot(const Mesh& mesh, const MaterialMap& mats,
                          const FieldState& state, double time,
                          const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open snapshot file for writing: " + path);

  const std::vector<QPRecord> qps = collect_qp_states(mesh, mats, state);
  const int nqp = static_cast<int>(qps.size() / mesh.elements.size());

  // per-element volume-averaged Cauchy stress, then its von Mises norm
  std::vector<double> sig_avg(mesh.elements.size() * 9, 0.0);
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    Mat3 s = Mat3::Zero();
    double vol = 0.0;
    for (int q = 0; q < nqp; ++q) {
      const QPRecord& r = qps[e * nqp + q];
      s += 0.5 * (r.sigma + r.sigma.transpose()) * r.wdetJ;
      vol += r.wdetJ;
    }
    s /= vol;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sig_avg[e * 9 + 3 * i + j] = s(i, j);
  }
  std::vector<double> vm(mesh.elements.size());
  kernels::batch_von_mises(sig_avg.data(), vm.size(), vm.data());

  os << "# vtk DataFile Version 3.0\n";
  os << "rve field snapshot t=" << time << "\n";
  os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.nodes.size() << " double\n";
  char buf[128];
  for (const Node& n : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", n.X[0], n.X[1], n.X[2]);
    os << buf;
  }
  std::size_t list_len = 0;
  for (const Element& el : mesh.elements) list_len += el.nen + 1;
  os << "CELLS " << mesh.elements.size() << " " << list_len << "\n";
  for (const Element& el : mesh.elements) {
    os << el.nen;
    for (int a = 0; a < el.nen; ++a) os << " " << mesh.index_of(el.conn[a]);
    os << "\n";
  }
  os << "CELL_TYPES " << mesh.elements.size() << "\n";
  for (const Element& el : mesh.elements) os << (el.nen == 8 ? 12 : 9) << "\n";

  os << "POINT_DATA " << mesh.nodes.size() << "\n";
  os << "VECTORS displacement double\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const Vec3 u =
        state.total_displacement(mesh.nodes[i].X, static_cast<int>(i));
    std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", u[0], u[1],
                  mesh.dim == 3 ? u[2] : 0.0);
    os << buf;
  }
  os << "CELL_DATA " << mesh.elements.size() << "\n";
  os << "SCALARS von_mises double 1\nLOOKUP_TABLE default\n";
  for (double v : vm) {
    std::snprintf(buf, sizeof buf, "%.12g\n", v);
    os << buf;
  }
  if (!os) throw IoError("write failure on snapshot file: " + path);
}

void write_mesh_keyword_file(const Mesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open mesh file for writing: " + path);
  Deck d;
  d.nodes = mesh.nodes;
  d.elements = mesh.elements;
  // emit only the node/element blocks
  std::ostringstream ss;
  ss << "*NODE\n";
  char buf[160];
  for (const Node& n : d.nodes) {
    std::snprintf(buf, sizeof buf, "%d, %.17g, %.17g, %.17g\n", n.id, n.X[0],
                  n.X[1], n.X[2]);
    ss << buf;
  }
  bool wrote_solid = false, wrote_shell = false;
  for (const Element& el : d.elements) {
    const bool solid = el.nen == 8;
    if (solid && !wrote_solid) {
      ss << "*ELEMENT_SOLID\n";
      wrote_solid = true;
    }
    if (!solid && !wrote_shell) {
      ss << "*ELEMENT_SHELL\n";
      wrote_shell = true;
    }
    ss << el.id << ", " << el.part_id;
    for (int a = 0; a < el.nen; ++a) ss << ", " << el.conn[a];
    ss << "\n";
  }
  ss << "*END\n";
  os << ss.str();
  if (!os) throw IoError("write failure on mesh file: " + path);
}

}  // namespace rve
