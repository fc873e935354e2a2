#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ladderlab/grid.hpp"
#include "ladderlab/hierarchy.hpp"
#include "ladderlab/parallel.hpp"

namespace ladderlab {

enum class Metric { relative_residual, absolute_residual, relative_error, absolute_error, overlap, exact };
enum class Status { passed, failed, errored, skipped };

const char* to_string(Metric m);
const char* to_string(Status s);

/// Lower is better for every metric except overlap.
bool within(Metric metric, double value, double threshold);

struct CheckResult {
  std::string id;
  std::string model;
  std::optional<Rational> n;
  std::optional<Rational> l;
  int pair = 0;  // 0 when no refined pair is involved
  Metric metric = Metric::relative_residual;
  double value = 0.0;
  double threshold = 0.0;
  Status status = Status::skipped;
  std::string note;

  bool passed() const { return status == Status::passed; }
};

class Thresholds {
 public:
  Thresholds();
  double get(const std::string& name) const;
  /// Throws usage_error for unknown names or non-finite values.
  void set(const std::string& name, double value);
  /// "name=value"
  void set_from_string(const std::string& assignment);
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

/// Check groups selectable with SuiteConfig::checks.
const std::vector<std::string>& check_groups();

struct SuiteConfig {
  std::string suite = "default";
  std::vector<std::string> models = {"oscillator", "morse", "coulomb"};
  std::set<std::string> checks;  // empty: every group
  double alpha = 1.0;
  std::map<std::string, GridSpec> grids;  // per-model overrides
  Thresholds thresholds;
  std::string timestamp;  // empty: SOURCE_DATE_EPOCH, else the Unix epoch
  ExecPolicy policy = ExecPolicy::automatic;

  bool is_default() const;
};

struct Summary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errored = 0;
  std::size_t skipped = 0;
};

struct VerificationReport {
  std::string suite;
  std::string timestamp;
  std::map<std::string, Grid> grids;
  std::vector<CheckResult> checks;  // sorted by id
  Summary summary;

  bool all_passed() const { return summary.failed == 0 && summary.errored == 0; }
};

/// Up to three Gaussian bumps placed where every operator of the model can
/// act on them without leaving the grid; scaled by sqrt(r) on the half-line.
std::vector<Wavefunction> test_functions(const HierarchyModel& model, const Grid& grid);

VerificationReport run_suite(const SuiteConfig& config);
Summary summarize(const std::vector<CheckResult>& checks);
std::string to_json(const VerificationReport& report, int indent = 2);

}  // namespace ladderlab
