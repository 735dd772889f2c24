#pragma once

// Verification cases: each recomputes a set of published or exactly known
// numbers through the library and compares within a fixed tolerance.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumrules/powerlaw.hpp"
#include "sumrules/specialfn.hpp"

namespace sumrules::verify {

struct Quantity {
  std::string name;
  double expected = 0.0;
  double got = 0.0;
  double tol = 0.0;
  std::string provenance;
  bool pass = false;
};

struct CaseResult {
  std::string id;
  std::vector<Quantity> quantities;
  std::optional<std::string> error;  // set when the pipeline threw
  bool pass = false;
};

struct Report {
  std::vector<CaseResult> cases;
  bool pass = false;
};

struct RunOptions {
  powerlaw::GammaFn gamma = specialfn::gamma;  // replaceable for fault injection
  int quartic_terms = 4;                       // last exact index in the quartic report
  double quad_tol = 1e-12;
};

/// Tolerances shared by the cases.
namespace tolerance {
inline constexpr double airy = 2e-3;
inline constexpr double quartic = 5e-4;
inline constexpr double closed_form = 1e-8;
inline constexpr double box_exact = 1e-12;
inline constexpr double five_decimals = 5e-6;
inline constexpr double table_relative = 1e-5;
}  // namespace tolerance

/// airy, sho, sho_shifted, quartic, box, powerlaw(3), powerlaw(6).
std::vector<std::string> default_case_ids();

/// Accepts the ids above, powerlaw(<N>) for any N > 0 and
/// general(<potential spec string>). Throws UsageError for anything else.
CaseResult run_case(std::string_view id, const RunOptions& options = {});

Report run_all(const RunOptions& options = {}, const std::vector<std::string>& ids = default_case_ids());

nlohmann::json to_json(const CaseResult& c);
nlohmann::json to_json(const Report& r);
std::string to_csv(const Report& r);
std::string to_table(const Report& r);

}  // namespace sumrules::verify
