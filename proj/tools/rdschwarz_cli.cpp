// rdschwarz: run iteration-count tables, property suites and matrix export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rdschwarz/assembly.hpp"
#include "rdschwarz/experiment.hpp"
#include "rdschwarz/mesh.hpp"
#include "rdschwarz/oracles/verify.hpp"

namespace {

using namespace rdschwarz;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunOptions {
  std::string config_file;
  std::string table, levels, eps, methods, smoothing_steps, out, sources;
  std::string tolerance, max_iterations, side, placement, order, two_level_cap, vcycle_cap;
  bool quiet = false;
};

int run_command(const RunOptions& o) {
  ExperimentConfig config = preset(TableId::poisson);
  if (!o.config_file.empty()) apply_config_text(config, read_file(o.config_file));
  // flags override the file; --table resets to its preset first
  if (!o.table.empty()) apply_config_value(config, "table", o.table);
  const std::pair<const char*, const std::string*> overrides[] = {
      {"levels", &o.levels},           {"eps", &o.eps},
      {"methods", &o.methods},         {"smoothing_steps", &o.smoothing_steps},
      {"sources", &o.sources},         {"tolerance", &o.tolerance},
      {"max_iterations", &o.max_iterations}, {"side", &o.side},
      {"coarse_placement", &o.placement},    {"order", &o.order},
      {"two_level_cap", &o.two_level_cap},   {"vcycle_cap", &o.vcycle_cap},
      {"out", &o.out}};
  for (const auto& [key, value] : overrides)
    if (!value->empty()) {
      apply_config_value(config, key, *value);
      if (std::string_view(key) == "vcycle_cap") apply_config_value(config, "vcycle_cap_many_groups", *value);
    }

  const TableResult result = run_table(config, [&](const RunRecord& r) {
    if (o.quiet) return;
    std::fprintf(stderr, "levels %d eps %g %s %s m=%d: ", r.levels, r.epsilon, r.source.c_str(),
                 std::string(to_string(r.method)).c_str(), r.smoothing_steps);
    if (r.skipped) std::fprintf(stderr, "skipped (%s)\n", r.skip_reason.c_str());
    else std::fprintf(stderr, "%d%s\n", r.report.iterations, r.report.converged ? "" : " (not converged)");
  });
  write_text(std::cout, result);
  write_outputs(result);
  return result.completed() ? 0 : 1;
}

int verify_command(const std::string& suite) {
  const auto results = oracles::run_suite(suite);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " properties passed\n";
  return failed == 0 ? 0 : 1;
}

struct ExportOptions {
  int level = 3;
  std::string model = "poisson";
  double eps = 1.0;
  int groups = 0;
  std::string out;
};

int export_command(const ExportOptions& o) {
  if (o.level < 1 || o.level - 1 > MeshHierarchy::max_supported_level)
    throw std::invalid_argument("--level must be between 1 and " + std::to_string(MeshHierarchy::max_supported_level + 1));
  ProblemParams params;
  if (o.model == "poisson") {
    params = ProblemParams::poisson(o.groups > 0 ? o.groups : 1);
  } else {
    const ReactionKind kind = parse_reaction_kind(o.model);
    const int groups = o.groups > 0 ? o.groups : (kind == ReactionKind::two_group ? 2 : 5);
    params = ProblemParams::poisson(groups);
    params.reaction = ReactionModel::make(kind, groups, o.eps);
  }
  params.validate();
  const BlockOperator op = assemble_operator(Mesh(o.level - 1), params);
  if (o.out.empty() || o.out == "-") {
    op.write_matrix_market(std::cout);
  } else {
    std::ofstream os(o.out);
    if (!os) throw std::runtime_error("cannot write '" + o.out + "'");
    op.write_matrix_market(os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell-wise Schwarz preconditioners for DG reaction-diffusion systems"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an iteration-count table");
  run_cmd->add_option("--config", run.config_file, "key = value config file; flags override it");
  run_cmd->add_option("--table", run.table, "poisson, two_group, contrast5, contrast5_smoothing, spatial5 or custom");
  run_cmd->add_option("--levels", run.levels, "row labels (number of mesh levels), e.g. 2-7 or 2,4,6");
  run_cmd->add_option("--eps", run.eps, "comma separated epsilon values");
  run_cmd->add_option("--methods", run.methods, "comma separated: U, 2AS, 2HS, 2MS, MGAS, MGMS");
  run_cmd->add_option("--smoothing-steps", run.smoothing_steps, "V-cycle smoothing steps, comma separated");
  run_cmd->add_option("--sources", run.sources, "sources as tuples separated by ';', e.g. \"1,0;0,1\"");
  run_cmd->add_option("--tolerance", run.tolerance, "relative residual target");
  run_cmd->add_option("--max-iterations", run.max_iterations, "GMRES iteration limit");
  run_cmd->add_option("--side", run.side, "left or right preconditioning");
  run_cmd->add_option("--coarse-placement", run.placement, "2MS order: symmetric, coarse-first, coarse-last");
  run_cmd->add_option("--order", run.order, "Gauss-Seidel order: lexicographic, reverse, red-black");
  run_cmd->add_option("--two-level-cap", run.two_level_cap, "largest row label for two-level methods");
  run_cmd->add_option("--vcycle-cap", run.vcycle_cap, "largest row label for U and V-cycles (all group counts)");
  run_cmd->add_option("--out", run.out, "output prefix for .txt, .csv and .json");
  run_cmd->add_flag("-q,--quiet", run.quiet, "no per-run progress on stderr");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run oracle and property suites");
  std::string suite_help = "all";
  for (const auto& s : oracles::suite_names()) suite_help += ", " + s;
  verify_cmd->add_option("--suite", suite, suite_help);

  ExportOptions ex;
  auto* export_cmd = app.add_subcommand("export-matrix", "Write an assembled operator in Matrix Market format");
  export_cmd->add_option("--level", ex.level, "row label: the mesh has 2^(level-1) cells per side");
  export_cmd->add_option("--model", ex.model, "poisson, two_group, contrast or spatial_contrast");
  export_cmd->add_option("--eps", ex.eps, "epsilon of the reaction model");
  export_cmd->add_option("--groups", ex.groups, "number of groups (default 1, 2 or 5 by model)");
  export_cmd->add_option("--out", ex.out, "output file, '-' or empty for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run_command(run);
    if (*verify_cmd) return verify_command(suite);
    if (*export_cmd) return export_command(ex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
