#ifndef NFVQ_SOLVERS_HPP_
#define NFVQ_SOLVERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nfvq/instance.hpp"
#include "nfvq/qubo.hpp"
#include "nfvq/schedule.hpp"

namespace nfvq {

// ---------------------------------------------------------------------------
// Exhaustive schedule-space oracle

struct OracleOptions {
   /// Guard on prod over steps of |capable VMs| * horizon.
   double max_search_space = 1e16;
};

struct OracleResult {
   Schedule schedule;
   double total_delay = 0.0;  ///< seconds
   std::uint64_t nodes = 0;   ///< placements tried
};

/// Depth-first search over (VM, start slot) per step with incremental
/// pruning on VM occupancy, chain precedence and the horizon, plus a
/// lower bound on the remaining chains. Returns a provably optimal schedule,
/// or nullopt when nothing fits in the horizon. Throws SizeError when the
/// nominal search space exceeds the guard.
[[nodiscard]] std::optional<OracleResult> exhaustive_schedule_oracle(
     const Instance& instance, int horizon, const OracleOptions& options = {});

/// log10 of prod over steps of |capable VMs| * horizon.
[[nodiscard]] double oracle_search_space_log10(const Instance& instance,
                                               int horizon);

// ---------------------------------------------------------------------------
// Bit-space brute force

struct BitSolution {
   Bits bits;
   double energy = 0.0;
};

/// Global minimum over all 2^N assignments, visited in Gray-code order.
/// Ties resolve to the lexicographically smallest bit vector. Throws
/// SizeError when N > max_vars.
[[nodiscard]] BitSolution brute_force_bits(const QuboMatrix& q,
                                           std::size_t max_vars = 24);

/// Calls visit(bits, energy) for every assignment (Gray-code order).
/// Intended for exhaustive property checks on small models.
template <typename Visit>
void enumerate_bits(const QuboMatrix& q, Visit&& visit,
                    std::size_t max_vars = 24);

// ---------------------------------------------------------------------------
// Simulated annealing

struct AnnealParams {
   std::size_t reads = 10;
   std::size_t sweeps = 1000;
   /// Inverse temperatures; nullopt picks 0.1 / s and 10 / s where s is the
   /// mean |Q| entry.
   std::optional<double> beta_start;
   std::optional<double> beta_end;
   std::uint64_t seed = 0;
   /// Worker threads; 0 means hardware concurrency. Results do not depend
   /// on this value.
   std::size_t threads = 1;
};

struct Sample {
   Bits bits;
   double energy = 0.0;
   std::size_t read = 0;
   friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleSet {
   std::vector<Sample> samples;  ///< ascending energy, read index on ties
   double seconds = 0.0;         ///< wall clock, excluded from equality

   friend bool operator==(const SampleSet& a, const SampleSet& b) {
      return a.samples == b.samples;
   }
};

/// Resolved inverse-temperature endpoints for a model.
struct BetaRange {
   double start = 0.0;
   double end = 0.0;
};
[[nodiscard]] BetaRange beta_range(const QuboMatrix& q,
                                   const AnnealParams& params);

/// Single-bit-flip Metropolis with a geometric beta schedule. Each read
/// starts from uniform random bits drawn from its own stream seeded by
/// (seed, read index), so serial and parallel runs agree. Reported energies
/// are recomputed from scratch. Throws ValidationError on bad parameters.
[[nodiscard]] SampleSet simulated_annealing(const QuboMatrix& q,
                                            const AnnealParams& params);

// ---------------------------------------------------------------------------

struct FeasibleSample {
   Schedule schedule;
   double total_delay = 0.0;
   std::size_t rank = 0;  ///< position in the sample set
};

/// First sample, in energy order, whose decoded schedule passes the
/// feasibility checker.
[[nodiscard]] std::optional<FeasibleSample> best_feasible(
     const QuboModel& model, const SampleSet& samples);

}  // namespace nfvq

#include "nfvq/detail/enumerate_bits.hpp"

#endif  // NFVQ_SOLVERS_HPP_
