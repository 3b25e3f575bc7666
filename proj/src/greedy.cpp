#include "nfvq/greedy.hpp"

namespace nfvq {

GreedyResult greedy_schedule(const Instance& instance) {
   int makespan = 0;
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      for (std::size_t j = 0; j < instance.step_count(i); ++j) {
         makespan += instance.min_processing_slots(i, j);
      }
   }

   GreedyResult out{Schedule(instance, makespan + 1), makespan, makespan + 1};
   int next = 1;
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      for (std::size_t j = 0; j < instance.step_count(i); ++j) {
         const std::size_t vm = instance.fastest_vm(i, j);
         place_step(instance, out.schedule, i, j, vm, next);
         next += instance.processing_slots(i, j, vm);
      }
   }
   return out;
}

int horizon(const Instance& instance, int bump) {
   if (const auto fixed = instance.horizon_override()) return *fixed + bump;
   return greedy_schedule(instance).horizon + bump;
}

}  // namespace nfvq
