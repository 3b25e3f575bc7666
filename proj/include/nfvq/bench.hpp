#ifndef NFVQ_BENCH_HPP_
#define NFVQ_BENCH_HPP_

// End-to-end experiment harness: greedy horizon, QUBO build, repeated
// annealing runs with a horizon retry loop, and table / histogram output.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nfvq/instance.hpp"
#include "nfvq/qubo.hpp"
#include "nfvq/schedule.hpp"
#include "nfvq/solvers.hpp"

namespace nfvq {

struct GeneratorParams {
   int chains = 2;
   int steps = 2;  ///< per chain
   int vms = 2;
   int kinds = 3;
   double workload_min = 1.0;  ///< MB, drawn uniformly and rounded to 0.1
   double workload_max = 3.0;
   std::vector<double> rates = {1.0, 1.5, 2.0};  ///< MB/s, drawn uniformly
   double density = 0.7;  ///< probability a VM hosts a given kind
   double slot_length = 1.0;
   int max_retries = 1000;
};

/// Deterministic for a fixed seed. Throws ValidationError if no servable
/// instance turns up within max_retries draws.
[[nodiscard]] Instance generate_case(const GeneratorParams& params,
                                     std::uint64_t seed);

struct CaseConfig {
   std::string name = "case";
   std::variant<Instance, GeneratorParams> source = GeneratorParams{};
   std::uint64_t generator_seed = 1;
   std::optional<double> slot_length;  ///< overrides the source's dT
   std::optional<int> horizon;         ///< overrides the greedy horizon
   std::size_t repeats = 50;
   AnnealParams anneal;
   PenaltyConfig penalty;
   int retry_cap = 3;
};

[[nodiscard]] Instance resolve_instance(const CaseConfig& config);

struct RunRecord {
   std::uint64_t seed = 0;
   bool feasible = false;
   double objective = 0.0;      ///< total delay, s
   double longest_delay = 0.0;  ///< s
   double avg_vm_busy = 0.0;    ///< s
   double seconds = 0.0;        ///< sampler wall clock
};

struct CaseResult {
   std::string name;
   std::size_t chains = 0;
   std::size_t min_steps = 0;
   std::size_t max_steps = 0;
   std::size_t vms = 0;

   int greedy_makespan = 0;
   double greedy_seconds = 0.0;
   int horizon = 0;  ///< horizon of the final attempt
   int attempts = 0;
   std::size_t q_size = 0;

   std::optional<double> best_objective;
   std::optional<double> longest_delay;  ///< of the best run
   std::optional<double> avg_vm_busy;    ///< of the best run
   std::optional<Schedule> best_schedule;
   double success_rate = 0.0;
   double avg_sampler_seconds = 0.0;
   std::vector<RunRecord> runs;  ///< runs of the final attempt
   std::string diagnostics;

   [[nodiscard]] bool successful() const { return best_objective.has_value(); }
};

/// Seed of repeat r derived from the case's anneal seed.
[[nodiscard]] std::uint64_t run_seed(std::uint64_t base, std::size_t repeat);

/// Greedy horizon, QUBO, `repeats` annealing runs and first-feasible decode
/// per run. When no run is feasible the horizon grows by one slot, up to
/// retry_cap times.
[[nodiscard]] CaseResult run_case(const CaseConfig& config);

/// Case, parameters, greedy result, objective, longest delay, average VM
/// processing time and Q size.
[[nodiscard]] std::string table3_csv(const std::vector<CaseResult>& results);
/// Case, QPU access time (never available), solver time, success rate.
/// Wall-clock columns read NA unless with_timing is set, so the default
/// output is reproducible byte for byte.
[[nodiscard]] std::string table4_csv(const std::vector<CaseResult>& results,
                                     bool with_timing = false);
/// Both tables as aligned text.
[[nodiscard]] std::string render_tables(const std::vector<CaseResult>& results);

struct HistogramBin {
   double value = 0.0;  ///< seconds
   std::size_t count = 0;
   double probability = 0.0;  ///< count / repeats
};

struct Histograms {
   std::vector<HistogramBin> longest;
   std::vector<HistogramBin> total;
   std::size_t infeasible = 0;
};

/// Delay distributions over the feasible runs of a case. Probabilities are
/// relative to all repeats, so they sum to the success rate.
[[nodiscard]] Histograms histograms(const CaseResult& result);
[[nodiscard]] std::string histogram_csv(const std::vector<HistogramBin>& bins);

/// Writes table3.csv, table4.csv, hist_longest_<case>.csv and
/// hist_total_<case>.csv into dir (created if missing).
void write_outputs(const std::string& dir,
                   const std::vector<CaseResult>& results,
                   bool with_timing = false);

/// Case list file. Relative instance paths resolve against base_dir.
///
///   { "defaults": { "repeats": 50, "reads": 10, "sweeps": 1000, "seed": 1,
///                   "retry_cap": 3, "penalty": 570, "slot_length_s": 1 },
///     "cases": [ { "name": "fig1", "instance": "fig1.json" },
///                { "name": "c1", "generator": { "chains": 2, "steps": 2,
///                  "vms": 2, "kinds": 3, "workload_mb": [1, 3],
///                  "rates": [1, 1.5, 2], "density": 0.7, "seed": 7 } } ] }
///
/// Any default may also be set per case.
[[nodiscard]] std::vector<CaseConfig> load_cases(std::string_view json_text,
                                                 const std::string& base_dir);
[[nodiscard]] std::vector<CaseConfig> load_cases_file(const std::string& path);

[[nodiscard]] std::string format_number(double v);

}  // namespace nfvq

#endif  // NFVQ_BENCH_HPP_
