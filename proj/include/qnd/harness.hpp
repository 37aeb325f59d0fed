// Copyright 2026 The qnd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QND_HARNESS_HPP
#define QND_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnd/channel.hpp"
#include "qnd/noise_disturbance.hpp"
#include "qnd/states.hpp"

// Analysis reports, random sweeps and parameter scans behind the qnd CLI.
namespace qnd {

struct MsdRecord {
  double v_n;
  double v_d;
  double s_x;
  double s_z;
  double lhs;
  double rhs;

  bool operator==(const MsdRecord&) const = default;
};

struct AnalysisReport {
  std::string instrument_id;
  std::vector<int> dims;  // dim_in, dim_out, outcome count
  double c;               // constant used by every bound
  std::optional<double> c_prime;  // set when an observable is degenerate
  double noise_x;
  double noise_z;
  double disturbance_lower;
  double disturbance_upper;
  double p_e_map;
  double fano_upper;
  std::optional<MsdRecord> msd;
  std::vector<Check> checks;

  bool all_passed() const;
  bool operator==(const AnalysisReport&) const = default;
};

nlohmann::json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);
/// Two-column key,value CSV.
std::string report_to_csv(const AnalysisReport& report);

struct AnalyzeSettings {
  int restarts = 32;
  std::uint64_t seed = 0;
};

/// Noise, disturbance bracket and every tradeoff check for one apparatus.
/// Z must be nondegenerate; a degenerate X switches the bounds to c'.
AnalysisReport analyze(const QuantumInstrument& inst, const Observable& x, const Observable& z,
                       const AnalyzeSettings& settings, std::string instrument_id = "");

struct AnalyzeOptions {
  std::string instrument;
  std::string obs_x;
  std::string obs_z;
  int restarts = 32;
  std::uint64_t seed = 0;
  std::string out;  // empty: stdout
  std::string format = "json";
};

/// 0 when every applicable check passes, 1 when one fails, 2 on bad input
/// (no report is written then).
int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  int dim = 2;
  int trials = 1000;
  std::uint64_t seed = 0;
  int outcomes = 0;  // 0: same as dim
  int kraus_per_outcome = 1;
  bool mub = false;
  int threads = 0;  // 0: QND_THREADS or the hardware concurrency
};

struct CheckSummary {
  std::string name;
  int evaluated = 0;
  int violations = 0;
  double min_margin = 0.0;
  std::uint64_t tightest_seed = 0;
};

struct VerifySummary {
  VerifyOptions options;
  int violations = 0;
  std::vector<CheckSummary> checks;
  /// Trial seed with the smallest margin of the certified noise-disturbance bound.
  std::uint64_t tightest_seed = 0;
  double tightest_margin = 0.0;
};

/// Checks for the trial with the given seed (instrument and bases both
/// derive from it).
std::vector<Check> verify_trial(int dim, int outcomes, int kraus_per_outcome,
                                std::uint64_t trial_seed, bool mub);

/// Trial i uses seed options.seed + i; results do not depend on scheduling.
VerifySummary run_verify(const VerifyOptions& options);
nlohmann::json summary_to_json(const VerifySummary& summary);
int cmd_verify(const VerifyOptions& options, const std::string& out_path, std::ostream& out,
               std::ostream& err);

struct SweepOptions {
  std::string family = "weak";
  double from = 0.0;
  double to = 1.0;
  int steps = 21;
  int restarts = 32;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct SweepRow {
  double param;
  double noise_x;
  double disturbance_lower;
  double disturbance_upper;
  double v_n;
  double v_d;
  double bound_margin;  // N + H(Z|S'M) + log c
};

std::vector<std::string> sweep_families();

/// Instrument and observables (X, Z) of a sweep family at parameter p.
struct SweepPoint {
  QuantumInstrument instrument;
  Observable x;
  Observable z;
};
SweepPoint sweep_point(const std::string& family, double param);

std::vector<SweepRow> run_sweep(const SweepOptions& options);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& csv);
int cmd_sweep(const SweepOptions& options, const std::string& out_path, std::ostream& out,
              std::ostream& err);

/// Thread count: `requested` if positive, else QND_THREADS, else hardware
/// concurrency; never more than `jobs`.
int worker_count(int requested, int jobs);

/// Runs body(i) for i in [0, n) on `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace qnd

#endif  // QND_HARNESS_HPP
