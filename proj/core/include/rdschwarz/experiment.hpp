#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdschwarz/gmres.hpp"
#include "rdschwarz/precond.hpp"
#include "rdschwarz/reaction.hpp"

namespace rdschwarz {

enum class TableId { poisson, two_group, contrast5, contrast5_smoothing, spatial5, custom };

std::string_view to_string(TableId id);
TableId parse_table_id(std::string_view name);

/// One experiment grid. Rows are labelled by the number of mesh levels in the
/// hierarchy, so row R solves on the mesh with 2^(R-1) cells per side and the
/// V-cycle descends to the single-cell mesh.
struct ExperimentConfig {
  TableId table = TableId::poisson;
  std::vector<int> levels;
  std::vector<double> epsilons{1.0};
  std::vector<Method> methods;
  std::vector<std::vector<double>> sources;
  std::vector<int> smoothing_steps{1};  // V-cycles run once per entry; other methods ignore it
  /// Methods printed with one column per epsilon; the others get a single max column.
  std::vector<Method> per_epsilon_columns;

  ReactionKind reaction = ReactionKind::zero;
  int groups = 1;
  double penalty = 2.0;
  int degree = 1;
  double face_scale = 0.5;

  SolveConfig solve;
  double damping = 1.0;
  CellOrder order = CellOrder::lexicographic;
  CoarsePlacement placement = CoarsePlacement::symmetric;

  /// Largest row label run for each family; larger rows are skipped with a reason.
  int two_level_cap = 7;
  int vcycle_cap = 9;
  int vcycle_cap_many_groups = 8;  // applies when groups >= 5

  std::string out;  // prefix for .txt/.csv/.json; empty writes nothing

  int vcycle_cap_for_groups() const { return groups >= 5 ? vcycle_cap_many_groups : vcycle_cap; }
  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

/// Defaults for the five published experiment grids.
ExperimentConfig preset(TableId id);

/// Applies `key = value` lines on top of `config`. '#' starts a comment. Lists are
/// comma separated; sources are tuples separated by ';' ("1,0; 0,1"); level lists
/// accept ranges ("2-7"). Unknown keys throw.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);
std::vector<std::vector<double>> parse_source_list(std::string_view text);
std::string source_label(const std::vector<double>& source);

struct RunRecord {
  TableId table = TableId::custom;
  int levels = 0;      // row label
  int mesh_level = 0;  // levels - 1
  double epsilon = 1.0;
  std::string source;
  Method method = Method::none;
  int smoothing_steps = 1;
  bool skipped = false;
  std::string skip_reason;
  IterationReport report;
  /// Residual history nonincreasing and the recomputed residual within 10x of the target.
  bool history_monotone = true;
  bool true_residual_ok = true;
};

struct TableResult {
  ExperimentConfig config;
  std::vector<RunRecord> records;

  /// Every requested run either completed or was skipped by a cap.
  bool completed() const;
  /// Largest iteration count over the matching completed records. An unset
  /// epsilon means all epsilons. Returns nothing if no record matches.
  std::optional<int> max_iterations(int levels, Method method, int smoothing_steps,
                                    std::optional<double> epsilon = std::nullopt) const;
  /// Whether any matching record did not converge within the iteration limit.
  bool any_unconverged(int levels, Method method, int smoothing_steps,
                       std::optional<double> epsilon = std::nullopt) const;
};

using ProgressCallback = std::function<void(const RunRecord&)>;

/// Runs the grid in configuration order. One operator hierarchy is built per
/// (levels, epsilon) and shared by all methods and sources on it.
TableResult run_table(const ExperimentConfig& config, const ProgressCallback& progress = {});

/// Aligned table: one row per level, per-epsilon columns for the methods in
/// per_epsilon_columns and max columns for the rest.
void write_text(std::ostream& os, const TableResult& result);
/// One line per raw run, fixed column order and number formatting.
void write_csv(std::ostream& os, const TableResult& result);
/// Configuration plus every record including residual histories.
void write_json(std::ostream& os, const TableResult& result);

/// Writes <out>.txt, <out>.csv and <out>.json when config.out is set.
void write_outputs(const TableResult& result);

}  // namespace rdschwarz
