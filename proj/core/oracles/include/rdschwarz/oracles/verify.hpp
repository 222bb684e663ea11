#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rdschwarz::oracles {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;  // measured quantity, e.g. "max diff 2.1e-15"
};

/// reaction, mesh, dg_space, assembly, scaling, transfer, schwarz,
/// twolevel_oracle, vcycle_oracle, krylov.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument for
/// an unknown name. Property failures are reported, never thrown.
std::vector<PropertyResult> run_suite(std::string_view name);

}  // namespace rdschwarz::oracles
