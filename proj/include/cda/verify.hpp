#pragma once

// Regression suite behind `cda verify`: known values recomputed from the
// fixture registry and compared exactly.

#include <string>
#include <vector>

#include "cda/fixtures.hpp"

namespace cda {

struct VerifyRow {
  std::string group;
  std::string check;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  double seconds = 0.0;
  bool all_passed() const;
  int failures() const;
};

struct VerifyOptions {
  /// Adds the l = 5 search and the Eisenstein saturation.
  bool extended = false;
  /// Random cases per property smoke check.
  int property_cases = 100;
  std::uint64_t seed = 1;
};

VerifyReport run_verify(const FixtureRegistry& reg, const VerifyOptions& opts = {});

json verify_report_to_json(const VerifyReport& r);
std::string verify_report_table(const VerifyReport& r);

/// The element w of A_3: w^2 = -i + i w, w zeta = -1 + zeta^3 - zeta w.
AlgebraElem a3_w_element(const AlgPtr& a3);

}  // namespace cda
