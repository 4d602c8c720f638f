#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symrh/circlezero.hpp"
#include "symrh/formsrc.hpp"
#include "symrh/lvalues.hpp"
#include "symrh/perpoly.hpp"
#include "symrh/symcoef.hpp"

namespace symrh {

struct FormSpec {
  std::string path;     // form file; empty selects a built-in weight
  unsigned weight = 0;  // built-in weight when path is empty
  int epsilon_override = 0;
  bool pairing = true;
};

struct ExperimentConfig {
  std::vector<FormSpec> forms;
  std::vector<unsigned> ms{1, 2, 3};
  Prec precision = 128;
  long target_rel_log2 = 0;  // 0 lets precision choose the budget target
  size_t rouche_samples = 2048;
  size_t sign_grid_cap = size_t(1) << 20;
  std::string cache_dir;  // empty disables caching
  std::string out_dir = ".";
  bool emit_json = true;
  bool emit_csv = true;
  unsigned jobs = 1;

  void validate() const;  // throws error on an unusable configuration
  nlohmann::json echo() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig config_from_file(const std::string& path);

struct InstanceResult {
  std::string label;
  unsigned m = 1;
  unsigned k = 0;
  unsigned long level = 1;
  std::string status = "ok";  // ok | skipped | failed
  std::string diagnostic;
  double seconds = 0;      // never serialized into the report body
  nlohmann::json detail;   // full per-instance record

  // summary fields for programmatic checks
  int epsilon = 0;
  size_t pairing_checked = 0;
  size_t pairing_violations = 0;
  CircleVerdict circle = CircleVerdict::numeric_only;
  DiskVerdict q_disk = DiskVerdict::indeterminate;
  DiskVerdict h_disk = DiskVerdict::indeterminate;
  size_t sign_changes = 0;
  size_t degree = 0;
  unsigned lemma_failures = 0;
};

struct RunReport {
  nlohmann::json toolchain;
  nlohmann::json config_echo;
  std::vector<InstanceResult> instances;  // sorted by (label, m)

  bool all_ok() const;
  int exit_code() const { return all_ok() ? 0 : 2; }
};

// Work selection for the verbs: bit flags.
enum RunStage : unsigned {
  kStageCoeffs = 1,
  kStageValues = 2,
  kStagePolys = 4,
  kStageCertify = 8,
  kStageLemmas = 16,
};

RunReport run_experiments(const ExperimentConfig& cfg, unsigned stages,
                          const std::function<void(const std::string&)>& log);

void write_report_json(const RunReport& r, const std::string& path);
void write_report_csv(const RunReport& r, const std::string& path);
void write_roots_csv(const RunReport& r, const std::string& path);
void write_timings_json(const RunReport& r, const std::string& path);

// ---- caches ----
// Coefficient cache: decimal strings chosen so the parse recovers the exact
// stored value, keyed by (label, m, precision); a file with a larger cutoff
// serves smaller requests.
SymPowerCoefficients cached_sym_coeffs(const NewformData& f, unsigned m,
                                       unsigned long X, Prec prec,
                                       const std::string& cache_dir,
                                       bool* hit = nullptr);

// Critical-value cache.  Values round-trip through decimal strings; whatever
// is returned was read back from the file just written, so a cold run and a
// warm rerun produce bitwise-identical downstream reports.  Corrupt cache
// files are recomputed, never partially reused.
CriticalValues cached_critical_values(const SymPowerCoefficients& c, Prec prec,
                                      int eps_override, bool pairing,
                                      long target_rel_log2,
                                      const std::string& cache_dir,
                                      bool* hit = nullptr);

// proved-regime annotation: k > 2 (log2(13 e^{2 pi} / 9) + m) + 1
bool within_proved_regime(unsigned m, unsigned k);

std::string sanitize_label(const std::string& label);

}  // namespace symrh
