#ifndef NFVQ_TESTS_SUPPORT_HPP_
#define NFVQ_TESTS_SUPPORT_HPP_

// Test-only generators. Kept separate from the library's case generator so
// the properties are not checked against the code under test.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "nfvq/instance.hpp"
#include "nfvq/schedule.hpp"

namespace nfvq::testing {

struct RandomShape {
   int max_chains = 3;
   int max_steps = 3;
   int max_vms = 3;
   int kinds = 3;
};

/// Every VM serves a random nonempty subset of kinds, every kind is served
/// somewhere, workloads are whole or half MB and rates come from a short list.
inline Instance random_instance(std::mt19937_64& rng, const RandomShape& shape = {}) {
   auto below = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
   const int vms_n = 1 + below(shape.max_vms);
   const int chains_n = 1 + below(shape.max_chains);
   std::vector<VmSpec> vms;
   for (int m = 1; m <= vms_n; ++m) {
      VmSpec vm{m, {}, std::vector<double>{0.5, 1.0, 1.5, 2.0}[static_cast<std::size_t>(below(4))]};
      for (int k = 1; k <= shape.kinds; ++k) {
         if (below(2) == 0) vm.capabilities.push_back(k);
      }
      if (vm.capabilities.empty()) vm.capabilities.push_back(1 + below(shape.kinds));
      vms.push_back(vm);
   }
   std::vector<int> served;
   for (const auto& vm : vms) {
      served.insert(served.end(), vm.capabilities.begin(), vm.capabilities.end());
   }
   std::sort(served.begin(), served.end());
   served.erase(std::unique(served.begin(), served.end()), served.end());

   std::vector<ServiceChain> chains;
   for (int i = 1; i <= chains_n; ++i) {
      ServiceChain c{i, {}};
      const int steps = 1 + below(shape.max_steps);
      for (int j = 0; j < steps; ++j) {
         const int kind = served[static_cast<std::size_t>(below(static_cast<int>(served.size())))];
         c.steps.push_back({kind, 0.5 * (1 + below(4))});
      }
      chains.push_back(c);
   }
   return Instance(vms, chains, 1.0);
}

struct Placed {
   std::size_t chain, step, vm;
   int start, slots;
};

/// Places steps in a random interleaving that respects chain order, each on
/// a random capable VM at a random free start. Returns nullopt if the random
/// choices paint themselves into a corner.
inline std::optional<std::vector<Placed>> random_placements(
     const Instance& in, int horizon, std::mt19937_64& rng) {
   std::vector<std::size_t> next(in.chain_count(), 0);
   std::vector<int> ready(in.chain_count(), 1);
   std::vector<std::vector<bool>> busy(in.vm_count(),
                                       std::vector<bool>(static_cast<std::size_t>(horizon) + 2));
   std::vector<Placed> out;
   std::size_t remaining = in.total_steps();
   while (remaining > 0) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < in.chain_count(); ++i) {
         if (next[i] < in.step_count(i)) open.push_back(i);
      }
      const std::size_t i = open[rng() % open.size()];
      const std::size_t j = next[i];
      std::vector<std::pair<std::size_t, int>> options;
      for (std::size_t m : in.capable_set(i, j)) {
         const int T = in.processing_slots(i, j, m);
         for (int s = ready[i]; s + T <= horizon; ++s) {
            bool free = true;
            for (int t = s; t < s + T; ++t) free = free && !busy[m][static_cast<std::size_t>(t)];
            if (free) options.emplace_back(m, s);
         }
      }
      if (options.empty()) return std::nullopt;
      // Favour early starts so most draws fit.
      const auto [m, s] = options[std::min(rng() % options.size(), rng() % options.size())];
      const int T = in.processing_slots(i, j, m);
      for (int t = s; t < s + T; ++t) busy[m][static_cast<std::size_t>(t)] = true;
      out.push_back({i, j, m, s, T});
      ready[i] = s + T;
      ++next[i];
      --remaining;
   }
   return out;
}

inline Schedule to_schedule(const Instance& in, int horizon,
                            const std::vector<Placed>& placed) {
   Schedule s(in, horizon);
   for (const auto& p : placed) place_step(in, s, p.chain, p.step, p.vm, p.start);
   return s;
}

/// Total delay straight from the placements: each chain ends when its last
/// step's finish marker fires, at start + slots.
inline double placed_total_delay(const Instance& in, const std::vector<Placed>& placed) {
   double total = 0.0;
   for (const auto& p : placed) {
      if (p.step + 1 == in.step_count(p.chain)) {
         total += (p.start + p.slots - 1) * in.slot_length();
      }
   }
   return total;
}

}  // namespace nfvq::testing

#endif  // NFVQ_TESTS_SUPPORT_HPP_
