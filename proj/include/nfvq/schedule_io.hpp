#ifndef NFVQ_SCHEDULE_IO_HPP_
#define NFVQ_SCHEDULE_IO_HPP_

// Schedule exchange file: the set variables of a schedule as JSON,
//
//   { "t_max": 11,
//     "variables": [ {"var": "x", "i": 1, "j": 1, "m": 1},
//                    {"var": "y", "i": 1, "j": 1, "m": 1, "t": 1}, ... ] }
//
// Indices are 1-based. Variables are listed x, y, z, p, each in
// (i, j, m, t) order, so equal schedules serialize to equal text.

#include <string>
#include <string_view>

#include "nfvq/instance.hpp"
#include "nfvq/schedule.hpp"

namespace nfvq {

[[nodiscard]] std::string save_schedule(const Schedule& schedule);

/// Throws ParseError on malformed text and CapabilityError when a set
/// variable names a VM that cannot serve the step.
[[nodiscard]] Schedule load_schedule(const Instance& instance,
                                     std::string_view json_text);

}  // namespace nfvq

#endif  // NFVQ_SCHEDULE_IO_HPP_
