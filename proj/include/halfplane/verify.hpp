#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "halfplane/function.hpp"
#include "halfplane/quadrature.hpp"

namespace halfplane {

/// One property check. `measured` is a deviation (or a signed margin) and
/// the check passes when measured ≤ tolerance.
struct CheckResult {
  std::string id;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::size_t failures() const;
};

struct VerifyConfig {
  ExtractionParams params;
  QuadratureOptions quad;
  std::uint64_t seed = 0;
  std::size_t mc_samples = 100000;
  /// Overrides for entries of default_tolerances(), by name.
  std::map<std::string, double> tolerances;

  double tol(const std::string& name) const;
};

/// Named check tolerances used by the suites.
const std::map<std::string, double>& default_tolerances();

/// lemma1, lemma41, thm1, thm2, thm4, thm5, thm6.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws ParseError for unknown
/// names or tolerance keys.
std::vector<SuiteReport> run_verify(const std::string& suite, const VerifyConfig& config = {});

}  // namespace halfplane
