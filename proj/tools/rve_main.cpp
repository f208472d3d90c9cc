#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "rve/deck_io.hpp"
#include "rve/solver.hpp"

namespace fs = std::filesystem;
using namespace rve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;
constexpr int kExitMatch = 5;

struct CommonOpts {
  std::optional<int> steps;
  std::optional<double> rtol;
  std::string out_dir = ".";
  bool quiet = false;
};

void write_records(const std::vector<HomogenizedRecord>& records,
                   const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_rveout(records, os);
  if (!os) throw IoError("write failure on " + path.string());
}

int infer_dim(const Deck& deck) {
  if (!deck.elements.empty() && deck.elements.front().nen == 4) return 2;
  return 3;
}

int cmd_run(const std::string& deck_path, const CommonOpts& opt) {
  const Deck deck = parse_deck_file(deck_path);
  const Mesh mesh = build_mesh(deck);
  const MaterialMap mats = build_materials(deck);
  const MacroLoad load = build_macro_load(deck);
  SolveControls controls = build_controls(deck);
  if (opt.steps) controls.n_steps = *opt.steps;
  if (opt.rtol) controls.newton_rtol = *opt.rtol;
  controls.verbose = !opt.quiet;

  std::vector<FacePairing> pairings;
  if (bc_kind(deck) == BcKind::PDBC) pairings = pair_periodic_nodes(mesh);
  const ConstraintSystem cs =
      build_constraints(mesh, pairings, load, bc_kind(deck));

  fs::create_directories(opt.out_dir);
  const fs::path out_dir(opt.out_dir);
  int snapshot_idx = 0;
  std::function<void(const FieldState&, double)> cb;
  if (deck.dt_field > 0.0) {
    cb = [&](const FieldState& st, double t) {
      write_field_snapshot(mesh, mats, st, t,
                           (out_dir / ("field_" + std::to_string(snapshot_idx++) +
                                       ".vtk"))
                               .string());
    };
  }

  std::vector<HomogenizedRecord> partial;
  try {
    RunResult res =
        run(mesh, mats, cs, load, deck.curves.at(load.lcid), controls,
            deck.dt_rveout, cb, deck.dt_field, &partial);
    if (deck.card.oupt == 1) write_records(res.records, out_dir / "rveout");
  } catch (const NonConvergence& e) {
    if (deck.card.oupt == 1 && !partial.empty())
      write_records(partial, out_dir / "rveout");
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const InvertedElement& e) {
    if (deck.card.oupt == 1 && !partial.empty())
      write_records(partial, out_dir / "rveout");
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_tangent(const std::string& deck_path, const CommonOpts& opt) {
  const Deck deck = parse_deck_file(deck_path);
  const Mesh mesh = build_mesh(deck);
  const MaterialMap mats = build_materials(deck);
  const EffectiveTangent C = effective_tangent(mesh, mats, bc_kind(deck));
  for (int i = 0; i < C.C.rows(); ++i) {
    for (int j = 0; j < C.C.cols(); ++j) {
      if (j) std::cout << "  ";
      std::cout << format_field(C.C(i, j));
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& deck_path) {
  const Deck deck = parse_deck_file(deck_path);
  const Mesh mesh = make_mesh(infer_dim(deck), deck.nodes, deck.elements);
  try {
    const std::vector<FacePairing> pairings = pair_periodic_nodes(mesh);
    for (const FacePairing& fp : pairings)
      std::cout << "axis " << fp.axis + 1 << ": " << fp.pairs.size()
                << " pairs, span " << fp.span << "\n";
    std::cout << "mesh is PDBC-matching\n";
  } catch (const MatchFailure& e) {
    std::cerr << "not PDBC-matching: node " << e.node_id << " on axis "
              << e.axis << " has no partner\n";
    return kExitMatch;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RVE homogenization solver"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string deck_path, kind, out_path = "mesh.k";
  int gen_n = 10, gen_nx = 10, gen_ny = 10;
  double gen_r = 0.3, gen_f = 0.5;

  auto* run_cmd = app.add_subcommand("run", "solve a deck and write rveout");
  run_cmd->add_option("deck", deck_path)->required();
  run_cmd->add_option("--steps", opt.steps, "override load step count");
  run_cmd->add_option("--rtol", opt.rtol, "override Newton relative tolerance");
  run_cmd->add_option("--out-dir", opt.out_dir, "output directory");
  run_cmd->add_flag("--quiet", opt.quiet, "suppress progress diagnostics");

  auto* tan_cmd = app.add_subcommand("tangent", "print the effective stiffness");
  tan_cmd->add_option("deck", deck_path)->required();
  tan_cmd->add_flag("--quiet", opt.quiet);

  auto* gen_cmd = app.add_subcommand("gen", "generate a microstructure mesh");
  gen_cmd->add_option("kind", kind, "sphere | laminate")->required();
  gen_cmd->add_option("-o,--out", out_path, "output keyword file");
  gen_cmd->add_option("-n", gen_n, "voxels per side (sphere)");
  gen_cmd->add_option("-r", gen_r, "sphere radius fraction");
  gen_cmd->add_option("--nx", gen_nx, "laminate columns");
  gen_cmd->add_option("--ny", gen_ny, "laminate rows");
  gen_cmd->add_option("-f", gen_f, "laminate phase-1 fraction");

  auto* chk_cmd = app.add_subcommand("check", "validate PDBC matching");
  chk_cmd->add_option("deck", deck_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(deck_path, opt);
    if (tan_cmd->parsed()) return cmd_tangent(deck_path, opt);
    if (chk_cmd->parsed()) return cmd_check(deck_path);
    if (gen_cmd->parsed()) {
      Mesh mesh;
      if (kind == "sphere") {
        mesh = generate_voxel_sphere(gen_n, gen_r);
      } else if (kind == "laminate") {
        mesh = generate_laminate_2d(gen_nx, gen_ny, gen_f);
      } else {
        std::cerr << "error: unknown generator '" << kind << "'\n";
        return kExitParse;
      }
      write_mesh_keyword_file(mesh, out_path);
      std::cout << "wrote " << out_path << " (" << mesh.nodes.size()
                << " nodes, " << mesh.elements.size() << " elements)\n";
      return kExitOk;
    }
  } catch (const MatchFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMatch;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const InvertedElement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
