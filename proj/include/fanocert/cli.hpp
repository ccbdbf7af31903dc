#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanocert/report.hpp"

namespace fanocert {

inline constexpr int kExitUsage = 64;

// One analytic claim family selected by --lemma.
//   1.3         beta < 4/3 and the slope cap past N_0 (needs a tuple or k, M)
//   3.1         three regional sign claims on log eps (needs k, M)
//   3.2         1.14 beta(2) < beta(3) and the Stirling sandwich (needs k, M)
//   3.3-sample  G2 at s = 8t ln t - t for sampled t
//   3.4         G3 > 0 certified on a t-range
//   3.5         G4 > 0 certified on cells of the two (s, t) regions
//   3.6-sample  G6 at the boundary for sampled t and G7 > 0 on cells
struct AnalyticRequest {
  std::string lemma;
  std::optional<long> k;
  std::optional<long> M;
  std::optional<DegreeTuple> degrees;
  std::optional<std::pair<long, long>> t_range;
  std::vector<long> t_values;
  long cell_step = 5;
  SignOptions options;
};

// Throws std::invalid_argument for an unknown lemma or missing inputs.
std::vector<Finding> analytic_findings(const AnalyticRequest& request);

const std::vector<std::string>& lemma_tags();

// Runs the command line (without the program name). The report goes to `out`
// or to --out; diagnostics go to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanocert
