#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "nfvq/error.hpp"
#include "nfvq/solvers.hpp"

namespace nfvq {

BetaRange beta_range(const QuboMatrix& q, const AnnealParams& params) {
   const double scale = q.mean_abs_coefficient();
   return {params.beta_start.value_or(0.1 / scale),
           params.beta_end.value_or(10.0 / scale)};
}

namespace {

class ReadRng {
 public:
   explicit ReadRng(std::uint64_t seed, std::uint64_t read) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(read),
                        static_cast<std::uint32_t>(read >> 32)};
      engine_.seed(seq);
   }
   std::uint64_t bits() { return engine_(); }
   /// Uniform in [0, 1) from the top 53 bits.
   double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
   std::mt19937_64 engine_;
};

Sample anneal_one(const QuboMatrix& q, std::size_t sweeps, BetaRange betas,
                  std::uint64_t seed, std::size_t read) {
   const std::size_t n = q.size();
   ReadRng rng(seed, read);
   Bits bits(n);
   for (std::size_t k = 0; k < n; ++k) bits[k] = rng.bits() & 1U;

   std::vector<double> field(q.linear().begin(), q.linear().end());
   for (const auto& t : q.quadratic()) {
      if (bits[t.col]) field[t.row] += t.coeff;
      if (bits[t.row]) field[t.col] += t.coeff;
   }

   const double ratio = betas.end / betas.start;
   for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
      const double frac = sweeps > 1 ? static_cast<double>(sweep) /
                                            static_cast<double>(sweeps - 1)
                                     : 1.0;
      const double beta = betas.start * std::pow(ratio, frac);
      for (std::size_t v = 0; v < n; ++v) {
         const double delta = bits[v] ? -field[v] : field[v];
         if (delta > 0.0) {
            // exp(-40) is below the resolution of uniform(), so skip the draw.
            const double x = beta * delta;
            if (x > 40.0 || rng.uniform() >= std::exp(-x)) continue;
         }
         const double sign = bits[v] ? -1.0 : 1.0;
         bits[v] = !bits[v];
         for (const Neighbor& nb : q.neighbors(v)) {
            field[nb.var] += sign * nb.coeff;
         }
      }
   }
   const double e = energy(q, bits);
   return Sample{std::move(bits), e, read};
}

}  // namespace

SampleSet simulated_annealing(const QuboMatrix& q, const AnnealParams& params) {
   if (params.reads < 1) throw ValidationError("reads must be at least 1");
   const BetaRange betas = beta_range(q, params);
   if (!(betas.start > 0.0) || !(betas.end >= betas.start) ||
       !std::isfinite(betas.end)) {
      throw ValidationError("need 0 < beta_start <= beta_end");
   }

   const auto t0 = std::chrono::steady_clock::now();
   SampleSet out;
   out.samples.resize(params.reads);

   std::size_t workers = params.threads;
   if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
   workers = std::min(workers, params.reads);
   if (workers <= 1) {
      for (std::size_t r = 0; r < params.reads; ++r) {
         out.samples[r] = anneal_one(q, params.sweeps, betas, params.seed, r);
      }
   } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
         pool.emplace_back([&] {
            for (std::size_t r = next++; r < params.reads; r = next++) {
               out.samples[r] = anneal_one(q, params.sweeps, betas, params.seed, r);
            }
         });
      }
   }

   std::stable_sort(out.samples.begin(), out.samples.end(),
                    [](const Sample& a, const Sample& b) {
                       return a.energy < b.energy;
                    });
   out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                               t0)
                      .count();
   return out;
}

std::optional<FeasibleSample> best_feasible(const QuboModel& model,
                                            const SampleSet& samples) {
   for (std::size_t rank = 0; rank < samples.samples.size(); ++rank) {
      Decoded d = decode(model, samples.samples[rank].bits);
      if (!check_feasibility(model.instance, d.schedule).feasible()) continue;
      const double delay = total_delay(model.instance, d.schedule);
      return FeasibleSample{std::move(d.schedule), delay, rank};
   }
   return std::nullopt;
}

}  // namespace nfvq
