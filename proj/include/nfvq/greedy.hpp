#ifndef NFVQ_GREEDY_HPP_
#define NFVQ_GREEDY_HPP_

#include "nfvq/instance.hpp"
#include "nfvq/schedule.hpp"

namespace nfvq {

struct GreedyResult {
   Schedule schedule;
   int makespan_slots = 0;
   int horizon = 0;  ///< makespan_slots + 1
};

/// Concatenates every chain (in id order) into one sequence and runs it
/// strictly one function at a time, each on its fastest capable VM (lowest
/// id on ties). The last function finishes at slot makespan + 1, so that is
/// the smallest horizon in which the plan is representable.
[[nodiscard]] GreedyResult greedy_schedule(const Instance& instance);

/// The horizon override when the instance carries one, otherwise the greedy
/// horizon; plus bump extra slots for the solver retry loop.
[[nodiscard]] int horizon(const Instance& instance, int bump = 0);

}  // namespace nfvq

#endif  // NFVQ_GREEDY_HPP_
