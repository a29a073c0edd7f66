#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rcdual/problem_io.hpp"
#include "rcdual/report.hpp"

namespace {

using rcdual::RunConfig;

struct CommonOpts {
  int grid = 0;
  std::vector<double> eps_levels;
  std::uint64_t seed = 1;
  double tol = 1e-4;
  double budget = rcdual::kDefaultGridBudget;
  std::string report_path;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--grid", o.grid, "lattice points per axis (0 = derive from the budget)");
  cmd->add_option("--eps-strict", o.eps_levels,
                  "strictness margins to sweep, comma separated (default 0,1e-9)")
      ->delimiter(',');
  cmd->add_option("--seed", o.seed, "seed for every randomized search (default 1)");
  cmd->add_option("--tol", o.tol, "tolerance when comparing estimates (default 1e-4)");
  cmd->add_option("--budget", o.budget, "total lattice point budget (default 1e7)");
  cmd->add_option("--report", o.report_path, "also write the report to this file");
  cmd->add_option("--format", o.format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
}

RunConfig to_config(const CommonOpts& o) {
  RunConfig cfg;
  cfg.grid_n = o.grid;
  if (!o.eps_levels.empty()) cfg.eps_strict_levels = o.eps_levels;
  cfg.seed = o.seed;
  cfg.tol_gap = o.tol;
  cfg.budget = o.budget;
  return cfg;
}

/// Prints the report and returns the exit code: 0 when every check passed,
/// 2 when the report carries a failed check.
int emit(const nlohmann::ordered_json& j, const CommonOpts& o, bool pass) {
  const std::string text = o.format == "json" ? j.dump(2) + "\n" : rcdual::render_text(j);
  std::cout << text;
  if (!o.report_path.empty()) {
    std::ofstream out(o.report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write report to " << o.report_path << "\n";
      return 1;
    }
    out << text;
  }
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reverse convex programs: lattice estimates, conjugate duals, gauge reductions"};
  app.require_subcommand(1);

  struct {
    CommonOpts o;
    std::string file;
  } solve, dual, equiv, reduce, chain;
  struct {
    CommonOpts o;
    std::string file;
    std::string target = "objective";
    int samples = 100;
  } conj;

  CLI::App* solve_cmd = app.add_subcommand("solve", "lattice estimates of the declared program");
  solve_cmd->add_option("problem", solve.file, "problem JSON file")->required();
  add_common(solve_cmd, solve.o);

  CLI::App* dual_cmd =
      app.add_subcommand("dual", "conjugate dual analysis with the assertable-ordering flags");
  dual_cmd->add_option("problem", dual.file, "problem JSON file")->required();
  add_common(dual_cmd, dual.o);

  CLI::App* equiv_cmd =
      app.add_subcommand("equivalence", "compare the strict and relaxed variants");
  equiv_cmd->add_option("problem", equiv.file, "problem JSON file")->required();
  add_common(equiv_cmd, equiv.o);

  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "rewrite the exclusion problem through the body's gauge");
  reduce_cmd->add_option("problem", reduce.file, "problem JSON file with a reduction section")
      ->required();
  add_common(reduce_cmd, reduce.o);

  CLI::App* conj_cmd =
      app.add_subcommand("conjugate", "compare closed-form and lattice conjugates");
  conj_cmd->add_option("problem", conj.file, "problem JSON file")->required();
  conj_cmd->add_option("--target", conj.target,
                       "objective (default) or constraint:<index>");
  conj_cmd->add_option("--samples", conj.samples, "number of probe directions (default 100)")
      ->check(CLI::PositiveNumber);
  add_common(conj_cmd, conj.o);

  CLI::App* chain_cmd = app.add_subcommand(
      "verify-chain", "dual and equivalence pipelines plus cross-consistency checks");
  chain_cmd->add_option("problem", chain.file, "problem JSON file")->required();
  add_common(chain_cmd, chain.o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) {
      rcdual::Program p = rcdual::load_program(solve.file);
      return emit(report_json(p, solve_report(p, to_config(solve.o))), solve.o, true);
    }
    if (dual_cmd->parsed()) {
      rcdual::Program p = rcdual::load_program(dual.file);
      rcdual::DualityReport r = duality_report(p, to_config(dual.o));
      return emit(report_json(p, r), dual.o, r.all_pass());
    }
    if (equiv_cmd->parsed()) {
      rcdual::Program p = rcdual::load_program(equiv.file);
      rcdual::EquivalenceReport r = equivalence_check(p, to_config(equiv.o));
      // Any verdict is a successful analysis; only internal errors exit nonzero.
      return emit(report_json(p, r), equiv.o, true);
    }
    if (reduce_cmd->parsed()) {
      rcdual::ProblemFile pf = rcdual::load_problem_file(reduce.file);
      if (!pf.reduction) {
        std::cerr << "error: " << reduce.file << " has no reduction section\n";
        return 1;
      }
      rcdual::ReductionReport r =
          verify_reduction(pf.f, pf.reduction->T, pf.reduction->D, pf.box, to_config(reduce.o),
                           pf.reduction->anchor, pf.name + "_reduced");
      return emit(report_json(pf.name, r), reduce.o, r.all_pass());
    }
    if (conj_cmd->parsed()) {
      rcdual::ProblemFile pf = rcdual::load_problem_file(conj.file);
      const rcdual::ConvexFunction* g = nullptr;
      if (conj.target == "objective") {
        g = &pf.f;
      } else if (conj.target.rfind("constraint:", 0) == 0) {
        const int idx = std::stoi(conj.target.substr(11));
        if (idx < 0 || idx >= static_cast<int>(pf.constraints.size())) {
          std::cerr << "error: constraint index " << idx << " out of range (have "
                    << pf.constraints.size() << ")\n";
          return 1;
        }
        g = &pf.constraints[idx].h;
      } else {
        std::cerr << "error: --target must be 'objective' or 'constraint:<index>'\n";
        return 1;
      }
      rcdual::ConjugateReport r =
          conjugate_report(*g, conj.target, pf.box, to_config(conj.o), conj.samples);
      return emit(report_json(pf.name, r), conj.o, r.all_consistent());
    }
    if (chain_cmd->parsed()) {
      rcdual::Program p = rcdual::load_program(chain.file);
      rcdual::ChainVerification v = verify_chain(p, to_config(chain.o));
      return emit(report_json(p, v), chain.o, v.all_pass());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
