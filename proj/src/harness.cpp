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

#include "qnd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qnd/info.hpp"
#include "qnd/io.hpp"
#include "qnd/msd.hpp"
#include "qnd/zoo.hpp"

namespace qnd {

using nlohmann::json;

namespace {

constexpr double kOzawaTolerance = 1e-10;

Check identity_check(std::string name, double a, double b, double tol) {
  return Check::inequality(std::move(name), -std::abs(a - b), tol);
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error(path + ": cannot open for writing");
  file << text;
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "skipped") return CheckStatus::Skipped;
  throw ParseError("report: unknown check status '" + s + "'");
}

}  // namespace

bool AnalysisReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

AnalysisReport analyze(const QuantumInstrument& inst, const Observable& x, const Observable& z,
                       const AnalyzeSettings& settings, std::string instrument_id) {
  if (x.dim() != inst.dim_in() || z.dim() != inst.dim_in()) {
    throw DimensionError("analyze: observables must act on the instrument input space");
  }
  if (!z.is_nondegenerate()) throw ValidationError("analyze: Z must be nondegenerate");

  AnalysisReport r;
  r.instrument_id = std::move(instrument_id);
  r.dims = {inst.dim_in(), inst.dim_out(), inst.outcome_count()};
  r.c = tradeoff_constant(x, z);
  if (!x.is_nondegenerate()) r.c_prime = overlap_constant_degenerate(x, z);

  const JointTable table = degenerate_noise_table(inst, x);
  r.noise_x = conditional_entropy(table, Axis::Rows);
  r.noise_z = noise(inst, z);

  const DisturbanceBracket bracket = optimize_disturbance(inst, z, settings.restarts, settings.seed);
  r.disturbance_lower = bracket.lower;
  r.disturbance_upper = bracket.upper;

  r.p_e_map = map_error_probability(table, Axis::Rows);
  r.fano_upper = fano_bounds(r.p_e_map, x.size()).fano_upper;

  const TradeoffReport tradeoff = tradeoff_check(inst, x, z, bracket);
  r.checks.push_back(tradeoff.certified);
  r.checks.push_back(tradeoff.implied);
  r.checks.push_back(joint_noise_check(inst, x, z).check);
  const MemoryReport memory = memory_eur_check(inst, x, z);
  r.checks.push_back(memory.uncertainty);
  r.checks.push_back(memory.data_processing);
  r.checks.push_back(Check::inequality("gallager", r.noise_x / 2.0 - r.p_e_map));
  r.checks.push_back(Check::inequality("fano", r.fano_upper - r.noise_x));

  const std::vector<double> xs = x.eigenvalues();
  const EstimatorMap f = map_guess(table, xs);
  const MsdReport msd = msd_tradeoff_check(inst, x, z, f);
  if (msd.check.status != CheckStatus::Skipped) {
    r.msd = MsdRecord{msd.v_n, msd.v_d, *msd.s_x, *msd.s_z, msd.lhs, msd.rhs};
  }
  r.checks.push_back(msd.check);

  r.checks.push_back(identity_check("ozawa_epsilon", v_noise(table, f, xs),
                                    ozawa_epsilon_sq(inst, x, f), kOzawaTolerance));
  if (inst.dim_out() == inst.dim_in()) {
    r.checks.push_back(identity_check("ozawa_eta", v_disturbance(inst, z), ozawa_eta_sq(inst, z),
                                      kOzawaTolerance));
  } else {
    r.checks.push_back(Check::skipped("ozawa_eta"));
  }
  r.checks.push_back(ricochet_equivalence(inst, x).identity);
  r.checks.push_back(fidelity_error_identity(inst, z, petz_correction(inst)).identity);
  r.checks.push_back(Check::inequality("bracket_order", bracket.upper - bracket.lower));
  return r;
}

json report_to_json(const AnalysisReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"margin", c.margin}});
  }
  json j = {{"schema", kSchema},
            {"instrument_id", r.instrument_id},
            {"dims", r.dims},
            {"c", r.c},
            {"c_prime", nullptr},
            {"noise_x", r.noise_x},
            {"noise_z", r.noise_z},
            {"disturbance_lower", r.disturbance_lower},
            {"disturbance_upper", r.disturbance_upper},
            {"p_e_map", r.p_e_map},
            {"fano_upper", r.fano_upper},
            {"msd", nullptr},
            {"checks", std::move(checks)},
            {"all_passed", r.all_passed()}};
  if (r.c_prime) j["c_prime"] = *r.c_prime;
  if (r.msd) {
    j["msd"] = {{"v_n", r.msd->v_n}, {"v_d", r.msd->v_d}, {"s_x", r.msd->s_x},
                {"s_z", r.msd->s_z}, {"lhs", r.msd->lhs}, {"rhs", r.msd->rhs}};
  }
  return j;
}

AnalysisReport report_from_json(const json& j) {
  try {
    AnalysisReport r;
    r.instrument_id = j.at("instrument_id").get<std::string>();
    r.dims = j.at("dims").get<std::vector<int>>();
    r.c = j.at("c").get<double>();
    if (!j.at("c_prime").is_null()) r.c_prime = j["c_prime"].get<double>();
    r.noise_x = j.at("noise_x").get<double>();
    r.noise_z = j.at("noise_z").get<double>();
    r.disturbance_lower = j.at("disturbance_lower").get<double>();
    r.disturbance_upper = j.at("disturbance_upper").get<double>();
    r.p_e_map = j.at("p_e_map").get<double>();
    r.fano_upper = j.at("fano_upper").get<double>();
    if (!j.at("msd").is_null()) {
      const json& m = j["msd"];
      r.msd = MsdRecord{m.at("v_n").get<double>(), m.at("v_d").get<double>(),
                        m.at("s_x").get<double>(), m.at("s_z").get<double>(),
                        m.at("lhs").get<double>(), m.at("rhs").get<double>()};
    }
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(),
                          status_from_string(c.at("status").get<std::string>()),
                          c.at("margin").get<double>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string report_to_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "key,value\n";
  out << "instrument_id," << r.instrument_id << '\n';
  out << "dim_in," << r.dims.at(0) << '\n';
  out << "dim_out," << r.dims.at(1) << '\n';
  out << "outcomes," << r.dims.at(2) << '\n';
  out << "c," << format_double(r.c) << '\n';
  out << "c_prime," << (r.c_prime ? format_double(*r.c_prime) : "") << '\n';
  out << "noise_x," << format_double(r.noise_x) << '\n';
  out << "noise_z," << format_double(r.noise_z) << '\n';
  out << "disturbance_lower," << format_double(r.disturbance_lower) << '\n';
  out << "disturbance_upper," << format_double(r.disturbance_upper) << '\n';
  out << "p_e_map," << format_double(r.p_e_map) << '\n';
  out << "fano_upper," << format_double(r.fano_upper) << '\n';
  if (r.msd) {
    out << "msd.v_n," << format_double(r.msd->v_n) << '\n';
    out << "msd.v_d," << format_double(r.msd->v_d) << '\n';
    out << "msd.s_x," << format_double(r.msd->s_x) << '\n';
    out << "msd.s_z," << format_double(r.msd->s_z) << '\n';
    out << "msd.lhs," << format_double(r.msd->lhs) << '\n';
    out << "msd.rhs," << format_double(r.msd->rhs) << '\n';
  }
  for (const auto& c : r.checks) {
    out << "check." << c.name << ".status," << to_string(c.status) << '\n';
    out << "check." << c.name << ".margin," << format_double(c.margin) << '\n';
  }
  out << "all_passed," << (r.all_passed() ? "true" : "false") << '\n';
  return out.str();
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  if (options.format != "json" && options.format != "csv") {
    err << "error: unknown format '" << options.format << "' (json or csv)\n";
    return 2;
  }
  if (options.restarts < 0) {
    err << "error: --restarts must be >= 0\n";
    return 2;
  }
  AnalysisReport report;
  try {
    const QuantumInstrument inst = load_instrument(options.instrument);
    const Observable x = load_observable(options.obs_x);
    const Observable z = load_observable(options.obs_z);
    bool mismatch = false;
    for (const auto& [path, obs] : {std::pair{&options.obs_x, &x}, std::pair{&options.obs_z, &z}}) {
      if (obs->dim() != inst.dim_in()) {
        err << "error: " << *path << ": observable dimension " << obs->dim()
            << " does not match instrument input dimension " << inst.dim_in() << " ("
            << options.instrument << ")\n";
        mismatch = true;
      }
    }
    if (mismatch) return 2;
    if (!z.is_nondegenerate()) {
      err << "error: " << options.obs_z << ": Z must be nondegenerate\n";
      return 2;
    }
    std::string id = read_json(options.instrument).value("id", "");
    if (id.empty()) id = std::filesystem::path(options.instrument).stem().string();
    report = analyze(inst, x, z, AnalyzeSettings{options.restarts, options.seed}, id);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string text = options.format == "json" ? report_to_json(report).dump(2) + "\n"
                                                    : report_to_csv(report);
  try {
    write_or_print(options.out, text, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return report.all_passed() ? 0 : 1;
}

std::vector<Check> verify_trial(int dim, int outcomes, int kraus_per_outcome,
                                std::uint64_t trial_seed, bool mub) {
  const QuantumInstrument inst =
      random_instrument(dim, outcomes > 0 ? outcomes : dim, kraus_per_outcome, trial_seed);
  const auto [x, z] = random_basis_pair(dim, trial_seed, mub);
  const double log_c = std::log2(overlap_constant(x, z));

  std::vector<Check> checks;
  const JointTable table = noise_table(inst, x);
  const double nx = conditional_entropy(table, Axis::Rows);
  checks.push_back(Check::inequality("noise_disturbance_certified",
                                     nx + quantum_lower_bound(inst, z) + log_c));
  checks.push_back(joint_noise_check(inst, x, z).check);
  const MemoryReport memory = memory_eur_check(inst, x, z);
  checks.push_back(memory.uncertainty);
  checks.push_back(memory.data_processing);

  const double p_e = map_error_probability(table, Axis::Rows);
  checks.push_back(Check::inequality("gallager", nx / 2.0 - p_e));
  checks.push_back(Check::inequality("fano", fano_bounds(p_e, x.size()).fano_upper - nx));

  const std::vector<double> xs = x.eigenvalues();
  const EstimatorMap f = map_guess(table, xs);
  checks.push_back(msd_tradeoff_check(inst, x, z, f).check);
  checks.push_back(identity_check("ozawa_epsilon", v_noise(table, f, xs),
                                  ozawa_epsilon_sq(inst, x, f), kOzawaTolerance));
  checks.push_back(identity_check("ozawa_eta", v_disturbance(inst, z), ozawa_eta_sq(inst, z),
                                  kOzawaTolerance));
  checks.push_back(ricochet_equivalence(inst, x).identity);
  return checks;
}

VerifySummary run_verify(const VerifyOptions& options) {
  if (options.trials < 0) throw ValidationError("verify: trials must be >= 0");
  std::vector<std::vector<Check>> results(static_cast<std::size_t>(options.trials));
  parallel_for(options.trials, worker_count(options.threads, options.trials), [&](int i) {
    results[static_cast<std::size_t>(i)] =
        verify_trial(options.dim, options.outcomes, options.kraus_per_outcome,
                     options.seed + static_cast<std::uint64_t>(i), options.mub);
  });

  VerifySummary summary;
  summary.options = options;
  summary.tightest_margin = std::numeric_limits<double>::infinity();
  std::map<std::string, std::size_t> index;
  for (int i = 0; i < options.trials; ++i) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
    for (const auto& c : results[static_cast<std::size_t>(i)]) {
      auto [it, inserted] = index.emplace(c.name, summary.checks.size());
      if (inserted) {
        summary.checks.push_back({c.name, 0, 0, std::numeric_limits<double>::infinity(), 0});
      }
      CheckSummary& s = summary.checks[it->second];
      if (c.status == CheckStatus::Skipped) continue;
      ++s.evaluated;
      if (c.status == CheckStatus::Fail) {
        ++s.violations;
        ++summary.violations;
      }
      if (c.margin < s.min_margin) {
        s.min_margin = c.margin;
        s.tightest_seed = seed;
      }
      if (c.name == "noise_disturbance_certified" && c.margin < summary.tightest_margin) {
        summary.tightest_margin = c.margin;
        summary.tightest_seed = seed;
      }
    }
  }
  return summary;
}

json summary_to_json(const VerifySummary& s) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json checks = json::array();
  for (const auto& c : s.checks) {
    checks.push_back({{"name", c.name},
                      {"evaluated", c.evaluated},
                      {"violations", c.violations},
                      {"min_margin", finite_or_null(c.min_margin)},
                      {"tightest_seed", c.tightest_seed}});
  }
  return {{"schema", kSchema},
          {"dim", s.options.dim},
          {"trials", s.options.trials},
          {"seed", s.options.seed},
          {"outcomes", s.options.outcomes > 0 ? s.options.outcomes : s.options.dim},
          {"kraus_per_outcome", s.options.kraus_per_outcome},
          {"mub", s.options.mub},
          {"violations", s.violations},
          {"tightest_seed", s.tightest_seed},
          {"tightest_margin", finite_or_null(s.tightest_margin)},
          {"checks", std::move(checks)}};
}

int cmd_verify(const VerifyOptions& options, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  if (options.dim < 2 || options.dim > 4) {
    err << "error: --dim must be 2, 3 or 4\n";
    return 2;
  }
  if (options.trials < 1 || options.outcomes < 0 || options.kraus_per_outcome < 1) {
    err << "error: --trials and --kraus-per-outcome must be >= 1, --outcomes >= 0\n";
    return 2;
  }
  try {
    const VerifySummary summary = run_verify(options);
    write_or_print(out_path, summary_to_json(summary).dump(2) + "\n", out);
    return summary.violations == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

std::vector<std::string> sweep_families() { return {"weak", "noisy-luders"}; }

SweepPoint sweep_point(const std::string& family, double param) {
  if (family == "weak") return {weak_measurement(pauli_x(), param), pauli_x(), pauli_z()};
  if (family == "noisy-luders") return {noisy_luders(pauli_x(), param), pauli_x(), pauli_z()};
  throw ValidationError("sweep: unknown family '" + family + "'");
}

std::vector<SweepRow> run_sweep(const SweepOptions& options) {
  if (options.steps < 1) throw ValidationError("sweep: steps must be >= 1");
  sweep_point(options.family, options.from);
  std::vector<SweepRow> rows(static_cast<std::size_t>(options.steps));
  parallel_for(options.steps, worker_count(options.threads, options.steps), [&](int i) {
    const double param =
        options.steps == 1 ? options.from
                           : options.from + (options.to - options.from) * i / (options.steps - 1);
    const SweepPoint p = sweep_point(options.family, param);
    const JointTable table = noise_table(p.instrument, p.x);
    const std::vector<double> xs = p.x.eigenvalues();
    const DisturbanceBracket bracket =
        optimize_disturbance(p.instrument, p.z, options.restarts, options.seed);
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    row.param = param;
    row.noise_x = conditional_entropy(table, Axis::Rows);
    row.disturbance_lower = bracket.lower;
    row.disturbance_upper = bracket.upper;
    row.v_n = v_noise(table, conditional_mean(table, xs), xs);
    row.v_d = v_disturbance(p.instrument, p.z);
    row.bound_margin =
        row.noise_x + row.disturbance_lower + std::log2(overlap_constant(p.x, p.z));
  });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "param,noise_x,disturbance_lower,disturbance_upper,v_n,v_d,bound_margin\n";
  for (const auto& r : rows) {
    out << format_double(r.param) << ',' << format_double(r.noise_x) << ','
        << format_double(r.disturbance_lower) << ',' << format_double(r.disturbance_upper) << ','
        << format_double(r.v_n) << ',' << format_double(r.v_d) << ','
        << format_double(r.bound_margin) << '\n';
  }
  return out.str();
}

std::vector<SweepRow> sweep_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("sweep csv: empty input");
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> values;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') {
        throw ParseError("sweep csv line " + std::to_string(line_no) + ": bad number '" + cell +
                         "'");
      }
      values.push_back(v);
    }
    if (values.size() != 7) {
      throw ParseError("sweep csv line " + std::to_string(line_no) + ": expected 7 columns");
    }
    rows.push_back({values[0], values[1], values[2], values[3], values[4], values[5], values[6]});
  }
  return rows;
}

int cmd_sweep(const SweepOptions& options, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  try {
    write_or_print(out_path, sweep_to_csv(run_sweep(options)), out);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int worker_count(int requested, int jobs) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("QND_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(n, std::max(jobs, 1)));
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qnd
