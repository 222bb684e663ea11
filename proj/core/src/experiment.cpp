#include "rdschwarz/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "rdschwarz/assembly.hpp"

namespace rdschwarz {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  return v;
}

double to_double(std::string_view s) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (str.empty() || used != str.size()) throw std::invalid_argument("expected a number, got '" + str + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, Parse parse) {
  std::vector<T> out;
  for (auto item : split(text, ','))
    if (!item.empty()) out.push_back(parse(item));
  return out;
}

bool contains(const std::vector<Method>& methods, Method m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

bool matches(const RunRecord& r, int levels, Method method, int steps, std::optional<double> epsilon) {
  if (r.skipped || r.levels != levels || r.method != method) return false;
  if (is_vcycle(method) && r.smoothing_steps != steps) return false;
  return !epsilon || r.epsilon == *epsilon;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

/// Step counts a method is run with: every configured m for V-cycles, once otherwise.
std::vector<int> steps_for(const ExperimentConfig& config, Method m) {
  if (is_vcycle(m)) return config.smoothing_steps;
  return {1};
}

std::optional<std::string> skip_reason(const ExperimentConfig& config, int levels, Method m) {
  if (is_two_level(m)) {
    if (levels < 2) return "two-level methods need at least two mesh levels";
    if (levels > config.two_level_cap)
      return "two-level cap " + std::to_string(config.two_level_cap) + " exceeded";
    return std::nullopt;
  }
  const int cap = config.vcycle_cap_for_groups();
  if (levels > cap) return "level cap " + std::to_string(cap) + " exceeded";
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TableId id) {
  switch (id) {
    case TableId::poisson: return "poisson";
    case TableId::two_group: return "two_group";
    case TableId::contrast5: return "contrast5";
    case TableId::contrast5_smoothing: return "contrast5_smoothing";
    case TableId::spatial5: return "spatial5";
    case TableId::custom: return "custom";
  }
  return "?";
}

TableId parse_table_id(std::string_view name) {
  for (TableId id : {TableId::poisson, TableId::two_group, TableId::contrast5, TableId::contrast5_smoothing,
                     TableId::spatial5, TableId::custom})
    if (name == to_string(id)) return id;
  throw std::invalid_argument("unknown table '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (levels.empty()) throw std::invalid_argument("config: no levels");
  for (int l : levels)
    if (l < 1 || l > MeshHierarchy::max_supported_level + 1)
      throw std::invalid_argument("config: level " + std::to_string(l) + " out of range");
  if (epsilons.empty()) throw std::invalid_argument("config: no epsilon values");
  for (double e : epsilons) {
    if (!(e > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
    // the published grids stop at 0.01, where the largest coupling is already 1e6
    if ((reaction == ReactionKind::contrast || reaction == ReactionKind::spatial_contrast) && e < 1e-2)
      throw std::invalid_argument("config: contrast models need epsilon >= 0.01");
  }
  if (methods.empty()) throw std::invalid_argument("config: no methods");
  if (sources.empty()) throw std::invalid_argument("config: no sources");
  for (const auto& s : sources)
    if (static_cast<int>(s.size()) != groups)
      throw std::invalid_argument("config: source " + source_label(s) + " does not have " + std::to_string(groups) +
                                  " components");
  if (smoothing_steps.empty()) throw std::invalid_argument("config: no smoothing steps");
  for (int m : smoothing_steps)
    if (m < 1) throw std::invalid_argument("config: smoothing steps must be positive");
  if (groups < 1) throw std::invalid_argument("config: groups must be positive");
  if (reaction == ReactionKind::two_group && groups != 2)
    throw std::invalid_argument("config: the two_group model has exactly two groups");
  if (!(damping > 0.0)) throw std::invalid_argument("config: damping must be positive");
  solve.validate();
  // constructing the model validates group count and epsilon
  (void)ReactionModel::make(reaction, groups, epsilons.front());
}

ExperimentConfig preset(TableId id) {
  using M = Method;
  ExperimentConfig c;
  c.table = id;
  const std::vector<std::vector<double>> five_group_sources{
      {1, 0, 1, 0, 1}, {0, 1, 0, 1, 0}, {0, 1, 1, 1, 0}, {1, 0, 0, 0, 1}};
  const std::vector<Method> robust{M::mg_additive, M::mg_multiplicative, M::two_level_additive,
                                   M::two_level_hybrid, M::two_level_multiplicative};
  switch (id) {
    case TableId::poisson:
    case TableId::custom:
      c.levels = {2, 3, 4, 5, 6, 7, 8};
      c.methods = {M::none, M::two_level_additive, M::two_level_hybrid, M::two_level_multiplicative,
                   M::mg_additive, M::mg_multiplicative};
      c.sources = {{1.0}};
      break;
    case TableId::two_group:
      c.levels = {2, 3, 4, 5, 6, 7, 8, 9};
      c.epsilons = {1.0, 1e-1, 1e-2, 1e-3, 1e-4};
      c.methods = robust;
      c.per_epsilon_columns = {M::mg_additive};
      c.sources = {{1, 0}, {0, 1}};
      c.reaction = ReactionKind::two_group;
      c.groups = 2;
      break;
    case TableId::contrast5:
      c.levels = {2, 3, 4, 5, 6, 7, 8, 9};
      c.epsilons = {1.0, 0.1, 0.01};
      c.methods = robust;
      c.per_epsilon_columns = {M::mg_additive};
      c.sources = five_group_sources;
      c.reaction = ReactionKind::contrast;
      c.groups = 5;
      break;
    case TableId::contrast5_smoothing:
      c.levels = {2, 3, 4, 5, 6, 7, 8, 9};
      c.epsilons = {1.0, 0.1, 0.01};
      c.methods = {M::mg_additive};
      c.smoothing_steps = {2, 4, 8};
      c.per_epsilon_columns = {M::mg_additive};
      c.sources = five_group_sources;
      c.reaction = ReactionKind::contrast;
      c.groups = 5;
      break;
    case TableId::spatial5:
      c.levels = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
      c.epsilons = {1.0, 0.1, 0.01};
      c.methods = robust;
      c.per_epsilon_columns = {M::mg_additive};
      c.sources = five_group_sources;
      c.reaction = ReactionKind::spatial_contrast;
      c.groups = 5;
      break;
  }
  return c;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    if (dash == std::string_view::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(trim(item.substr(0, dash)));
    const int hi = to_int(trim(item.substr(dash + 1)));
    if (hi < lo) throw std::invalid_argument("empty range '" + std::string(item) + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) { return parse_list<double>(text, to_double); }

std::vector<std::vector<double>> parse_source_list(std::string_view text) {
  std::vector<std::vector<double>> out;
  for (auto tuple : split(text, ';')) {
    if (tuple.empty()) continue;
    if (tuple.front() == '(' && tuple.back() == ')') tuple = trim(tuple.substr(1, tuple.size() - 2));
    out.push_back(parse_double_list(tuple));
  }
  return out;
}

std::string source_label(const std::vector<double>& source) {
  std::string s = "(";
  for (std::size_t i = 0; i < source.size(); ++i) s += (i ? "," : "") + format_double(source[i]);
  return s + ")";
}

void apply_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "table") {
    const std::string out = c.out;
    c = preset(parse_table_id(value));
    c.out = out;
  } else if (key == "levels") {
    c.levels = parse_int_list(value);
  } else if (key == "eps" || key == "epsilons") {
    c.epsilons = parse_double_list(value);
  } else if (key == "methods") {
    c.methods = parse_list<Method>(value, parse_method);
  } else if (key == "per_epsilon_columns") {
    c.per_epsilon_columns = parse_list<Method>(value, parse_method);
  } else if (key == "sources") {
    c.sources = parse_source_list(value);
  } else if (key == "smoothing_steps") {
    c.smoothing_steps = parse_int_list(value);
  } else if (key == "reaction") {
    c.reaction = parse_reaction_kind(value);
  } else if (key == "groups") {
    c.groups = to_int(value);
  } else if (key == "penalty") {
    c.penalty = to_double(value);
  } else if (key == "degree") {
    c.degree = to_int(value);
  } else if (key == "face_scale") {
    c.face_scale = to_double(value);
  } else if (key == "tolerance") {
    c.solve.tolerance = to_double(value);
  } else if (key == "max_iterations") {
    c.solve.max_iterations = to_int(value);
  } else if (key == "restart") {
    c.solve.restart = to_int(value);
  } else if (key == "side") {
    if (value == "left") c.solve.side = PreconditionSide::left;
    else if (value == "right") c.solve.side = PreconditionSide::right;
    else throw std::invalid_argument("side must be left or right");
  } else if (key == "damping") {
    c.damping = to_double(value);
  } else if (key == "order") {
    c.order = parse_cell_order(value);
  } else if (key == "coarse_placement") {
    c.placement = parse_coarse_placement(value);
  } else if (key == "two_level_cap") {
    c.two_level_cap = to_int(value);
  } else if (key == "vcycle_cap") {
    c.vcycle_cap = to_int(value);
  } else if (key == "vcycle_cap_many_groups") {
    c.vcycle_cap_many_groups = to_int(value);
  } else if (key == "out") {
    c.out = std::string(value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    entries.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  // the table preset goes first so that the other keys refine it
  std::stable_partition(entries.begin(), entries.end(), [](const auto& e) { return e.first == "table"; });
  for (const auto& [k, v] : entries) apply_config_value(config, k, v);
}

bool TableResult::completed() const {
  return std::all_of(records.begin(), records.end(), [](const RunRecord& r) {
    return r.skipped || (r.history_monotone && r.true_residual_ok);
  });
}

std::optional<int> TableResult::max_iterations(int levels, Method method, int steps,
                                               std::optional<double> epsilon) const {
  std::optional<int> best;
  for (const auto& r : records)
    if (matches(r, levels, method, steps, epsilon)) best = std::max(best.value_or(0), r.report.iterations);
  return best;
}

bool TableResult::any_unconverged(int levels, Method method, int steps, std::optional<double> epsilon) const {
  return std::any_of(records.begin(), records.end(), [&](const RunRecord& r) {
    return matches(r, levels, method, steps, epsilon) && !r.report.converged;
  });
}

TableResult run_table(const ExperimentConfig& config, const ProgressCallback& progress) {
  config.validate();
  TableResult result;
  result.config = config;

  for (int levels : config.levels) {
    const int mesh_level = levels - 1;
    for (double eps : config.epsilons) {
      std::unique_ptr<MultilevelSetup> setup;
      std::vector<DualVector> rhs;

      for (Method method : config.methods) {
        for (int steps : steps_for(config, method)) {
          const auto reason = skip_reason(config, levels, method);
          std::unique_ptr<Preconditioner> pc;
          if (!reason) {
            if (!setup) {
              ProblemParams params = ProblemParams::poisson(config.groups);
              params.reaction = ReactionModel::make(config.reaction, config.groups, eps);
              params.penalty = config.penalty;
              params.degree = config.degree;
              params.face_scale = config.face_scale;
              setup = std::make_unique<MultilevelSetup>(mesh_level, params);
              for (const auto& s : config.sources)
                rhs.push_back(assemble_rhs(setup->meshes().finest(), params, s));
            }
            PreconditionerOptions options;
            options.smoothing_steps = steps;
            options.damping = config.damping;
            options.order = config.order;
            options.placement = config.placement;
            pc = setup->make(method, options);
          }

          for (std::size_t s = 0; s < config.sources.size(); ++s) {
            RunRecord rec;
            rec.table = config.table;
            rec.levels = levels;
            rec.mesh_level = mesh_level;
            rec.epsilon = eps;
            rec.source = source_label(config.sources[s]);
            rec.method = method;
            rec.smoothing_steps = steps;
            if (reason) {
              rec.skipped = true;
              rec.skip_reason = *reason;
            } else {
              const BlockOperator& a = setup->op(mesh_level);
              auto solved = gmres([&](const PrimalVector& x) { return a.apply(x); },
                                  [&](const DualVector& r) { return pc->apply(r); }, rhs[s], config.solve);
              rec.report = std::move(solved.report);
              const auto& h = rec.report.residual_history;
              rec.history_monotone = std::is_sorted(h.rbegin(), h.rend());
              rec.true_residual_ok = !rec.report.converged || rec.report.true_residual <= 10.0 * config.solve.tolerance;
            }
            rec.report.method = std::string(to_string(method));
            rec.report.level = levels;
            rec.report.epsilon = eps;
            rec.report.source = rec.source;
            if (progress) progress(rec);
            result.records.push_back(std::move(rec));
          }
        }
      }
    }
  }
  return result;
}

void write_text(std::ostream& os, const TableResult& result) {
  const ExperimentConfig& c = result.config;
  const bool eps_columns = c.epsilons.size() > 1;

  struct Column {
    std::string group, sub;
    Method method;
    int steps;
    std::optional<double> eps;
  };
  std::vector<Column> columns;
  for (Method m : c.methods)
    for (int steps : steps_for(c, m)) {
      std::string group(to_string(m));
      if (is_vcycle(m) && c.smoothing_steps.size() > 1) group += " m=" + std::to_string(steps);
      if (eps_columns && contains(c.per_epsilon_columns, m)) {
        for (double e : c.epsilons) columns.push_back({group, format_double(e), m, steps, e});
      } else {
        columns.push_back({group, eps_columns ? "max" : "", m, steps, std::nullopt});
      }
    }

  auto cell = [&](int levels, const Column& col) -> std::string {
    const auto it = result.max_iterations(levels, col.method, col.steps, col.eps);
    if (!it) return "-";
    if (result.any_unconverged(levels, col.method, col.steps, col.eps)) return ">" + std::to_string(*it);
    return std::to_string(*it);
  };

  std::vector<std::size_t> width(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    width[j] = std::max(columns[j].group.size(), columns[j].sub.size());
    for (int l : c.levels) width[j] = std::max(width[j], cell(l, columns[j]).size());
  }
  const std::string row_label = "levels";
  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };

  os << pad(row_label, row_label.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const bool repeat = j > 0 && columns[j].group == columns[j - 1].group;
    os << "  " << pad(repeat ? "" : columns[j].group, width[j]);
  }
  os << '\n';
  if (eps_columns) {
    os << pad("eps", row_label.size());
    for (std::size_t j = 0; j < columns.size(); ++j) os << "  " << pad(columns[j].sub, width[j]);
    os << '\n';
  }
  for (int l : c.levels) {
    os << pad(std::to_string(l), row_label.size());
    for (std::size_t j = 0; j < columns.size(); ++j) os << "  " << pad(cell(l, columns[j]), width[j]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const TableResult& result) {
  os << "table,levels,mesh_level,epsilon,source,method,smoothing_steps,status,iterations,converged,true_residual,"
        "note\n";
  for (const auto& r : result.records) {
    os << to_string(r.table) << ',' << r.levels << ',' << r.mesh_level << ',' << format_double(r.epsilon) << ','
       << csv_field(r.source) << ',' << to_string(r.method) << ',' << r.smoothing_steps << ',';
    if (r.skipped) {
      os << "skipped,,,," << csv_field(r.skip_reason) << '\n';
      continue;
    }
    os << "ok," << r.report.iterations << ',' << (r.report.converged ? "true" : "false") << ','
       << format_sci(r.report.true_residual) << ',';
    if (!r.history_monotone) os << "residual history not monotone";
    else if (!r.true_residual_ok) os << "true residual above 10x target";
    os << '\n';
  }
}

void write_json(std::ostream& os, const TableResult& result) {
  using json = nlohmann::ordered_json;
  const ExperimentConfig& c = result.config;
  json cfg;
  cfg["table"] = to_string(c.table);
  cfg["levels"] = c.levels;
  cfg["epsilons"] = c.epsilons;
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(to_string(m));
  cfg["methods"] = methods;
  cfg["sources"] = c.sources;
  cfg["smoothing_steps"] = c.smoothing_steps;
  cfg["reaction"] = to_string(c.reaction);
  cfg["groups"] = c.groups;
  cfg["penalty"] = c.penalty;
  cfg["degree"] = c.degree;
  cfg["face_scale"] = c.face_scale;
  cfg["tolerance"] = c.solve.tolerance;
  cfg["max_iterations"] = c.solve.max_iterations;
  cfg["restart"] = c.solve.restart;
  cfg["side"] = c.solve.side == PreconditionSide::right ? "right" : "left";
  cfg["damping"] = c.damping;
  cfg["order"] = to_string(c.order);
  cfg["coarse_placement"] = to_string(c.placement);
  cfg["two_level_cap"] = c.two_level_cap;
  cfg["vcycle_cap"] = c.vcycle_cap_for_groups();

  json records = json::array();
  for (const auto& r : result.records) {
    json j;
    j["levels"] = r.levels;
    j["mesh_level"] = r.mesh_level;
    j["epsilon"] = r.epsilon;
    j["source"] = r.source;
    j["method"] = to_string(r.method);
    j["smoothing_steps"] = r.smoothing_steps;
    if (r.skipped) {
      j["skipped"] = r.skip_reason;
    } else {
      j["iterations"] = r.report.iterations;
      j["converged"] = r.report.converged;
      j["true_residual"] = r.report.true_residual;
      j["history_monotone"] = r.history_monotone;
      j["residual_history"] = r.report.residual_history;
    }
    records.push_back(std::move(j));
  }
  json doc;
  doc["config"] = std::move(cfg);
  doc["records"] = std::move(records);
  os << doc.dump(2) << '\n';
}

void write_outputs(const TableResult& result) {
  const std::string& prefix = result.config.out;
  if (prefix.empty()) return;
  auto open = [](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
  };
  {
    auto f = open(prefix + ".txt");
    write_text(f, result);
  }
  {
    auto f = open(prefix + ".csv");
    write_csv(f, result);
  }
  auto f = open(prefix + ".json");
  write_json(f, result);
}

}  // namespace rdschwarz
