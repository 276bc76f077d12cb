#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orlab/json_io.hpp"

namespace olab {

// Largest violation of one asserted identity or inequality over a suite run.
struct SuiteCheck {
  std::string name;
  std::string anchor;  // the statement being checked
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::size_t samples = 0;
  bool pass() const { return max_violation <= tolerance; }
};

// Reported quantity with no asserted value (open questions are measured, not decided).
struct SuiteMeasurement {
  std::string name;
  std::string anchor;
  double min = kInf;
  double max = -kInf;
  std::size_t samples = 0;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;
  std::vector<SuiteMeasurement> measurements;

  bool pass() const;
  // max over checks of max_violation / tolerance; a check with zero tolerance contributes 0 when
  // it passes and inf otherwise.
  double normalized_violation() const;
  const SuiteCheck* first_failure() const;
  json to_json() const;
};

const std::vector<std::string>& suite_names();
// Trial i draws its instance from InstanceRng(seed, i). Throws DomainError on an unknown suite.
// `tighten` maps check names to tolerances; SchemaError when a name is unknown or a value would
// loosen the default.
SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed,
                      const std::map<std::string, double>& tighten = {});

}  // namespace olab
