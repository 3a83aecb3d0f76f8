#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kelvin/quad.hpp"
#include "kelvin/sweep.hpp"
#include "kelvin/types.hpp"

namespace kelvin {

inline constexpr std::string_view kSuiteNames[] = {
    "fd", "reflection", "ode", "apelblat", "theorem5", "appendix", "brychkov", "integer",
};

struct VerifyOptions {
  /// Replaces the base tolerance of every check. Checks that scale with
  /// (1 + |value|) keep the scaling.
  std::optional<double> tol_override;
  SeriesConfig series;
  QuadConfig quad;
  ExecMode mode = ExecMode::parallel;
};

/// Verification grids compiled into the library from data/verify_manifest.json.
std::string_view embedded_manifest();

/// Runs one suite ("all" runs every suite in kSuiteNames order) against the
/// embedded manifest. Report order is deterministic. Unknown names and
/// malformed manifests raise ConfigError.
std::vector<IdentityReport> run_suite(std::string_view suite, const VerifyOptions& opts = {});

/// Same, against a caller-supplied manifest text.
std::vector<IdentityReport> run_suite(std::string_view suite, std::string_view manifest,
                                      const VerifyOptions& opts);

/// Every derivative-integral bracket reading at (nu, x), compared against
/// the closed-form derivative (two reports per bracket: dber, dbei).
std::vector<IdentityReport> bracket_survey(double nu, double x, double tol,
                                           const VerifyOptions& opts = {});

bool all_pass(const std::vector<IdentityReport>& reports);

}  // namespace kelvin
