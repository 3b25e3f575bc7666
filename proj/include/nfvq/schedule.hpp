#ifndef NFVQ_SCHEDULE_HPP_
#define NFVQ_SCHEDULE_HPP_

// Time-indexed schedules: the binary tensors x (VM choice), y (busy),
// z (start) and p (finish) over capable (chain, step, VM) triples and
// slots 1..T_max, plus the feasibility checker and objective evaluation.
//
// Slots are 1-based throughout: p firing at slot t means the function
// finished at the beginning of slot t, i.e. after (t - 1) * dT seconds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfvq/instance.hpp"

namespace nfvq {

/// One capable (chain, step, VM) triple with its slot count T_ijm.
struct Assignment {
   std::size_t chain = 0;
   std::size_t step = 0;
   std::size_t vm = 0;
   int slots = 0;

   friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Lexicographic (chain, step, VM) enumeration of capable triples. Triples
/// whose VM cannot serve the step never appear, so every tensor indexed by
/// this table satisfies the incapable-VM-is-zero constraint by omission.
class AssignmentTable {
 public:
   AssignmentTable() = default;
   explicit AssignmentTable(const Instance& instance);

   [[nodiscard]] std::size_t size() const { return items_.size(); }
   [[nodiscard]] const Assignment& operator[](std::size_t a) const {
      return items_[a];
   }
   [[nodiscard]] auto begin() const { return items_.begin(); }
   [[nodiscard]] auto end() const { return items_.end(); }

   [[nodiscard]] std::size_t chain_count() const {
      return chain_first_step_.size() - 1;
   }
   [[nodiscard]] std::size_t vm_count() const { return vm_count_; }
   [[nodiscard]] std::size_t step_count(std::size_t chain) const;
   [[nodiscard]] std::size_t total_steps() const {
      return step_first_.size() - 1;
   }
   /// Position of (chain, step) in the flattened step list.
   [[nodiscard]] std::size_t flat_step(std::size_t chain,
                                       std::size_t step) const;

   /// Assignment range [first, last) belonging to flat step s.
   [[nodiscard]] std::size_t first_of(std::size_t flat) const {
      return step_first_[flat];
   }
   [[nodiscard]] std::size_t last_of(std::size_t flat) const {
      return step_first_[flat + 1];
   }

   [[nodiscard]] std::optional<std::size_t> find(std::size_t chain,
                                                 std::size_t step,
                                                 std::size_t vm) const;

   /// Assignments with step > 0 carry a precedence slack; this is their
   /// dense index, or nullopt for first steps.
   [[nodiscard]] std::optional<std::size_t> successor_index(
        std::size_t a) const;
   [[nodiscard]] std::size_t successor_count() const {
      return successor_count_;
   }

   friend bool operator==(const AssignmentTable&,
                          const AssignmentTable&) = default;

 private:
   std::vector<Assignment> items_;
   std::vector<std::size_t> chain_first_step_{0};
   std::vector<std::size_t> step_first_{0};
   std::vector<std::ptrdiff_t> successor_;
   std::size_t successor_count_ = 0;
   std::size_t vm_count_ = 0;
};

class Schedule {
 public:
   Schedule() = default;
   Schedule(AssignmentTable table, int horizon);
   Schedule(const Instance& instance, int horizon);

   [[nodiscard]] int horizon() const { return horizon_; }
   [[nodiscard]] const AssignmentTable& table() const { return table_; }

   // Indexed by assignment position and 1-based slot.
   [[nodiscard]] bool x(std::size_t a) const { return x_.at(a) != 0; }
   [[nodiscard]] bool y(std::size_t a, int t) const { return y_[cell(a, t)] != 0; }
   [[nodiscard]] bool z(std::size_t a, int t) const { return z_[cell(a, t)] != 0; }
   [[nodiscard]] bool p(std::size_t a, int t) const { return p_[cell(a, t)] != 0; }

   void set_x(std::size_t a, bool v) { x_.at(a) = v; }
   void set_y(std::size_t a, int t, bool v) { y_[cell(a, t)] = v; }
   void set_z(std::size_t a, int t, bool v) { z_[cell(a, t)] = v; }
   void set_p(std::size_t a, int t, bool v) { p_[cell(a, t)] = v; }

   /// Assignment position of a capable triple; CapabilityError otherwise.
   [[nodiscard]] std::size_t at(std::size_t chain, std::size_t step,
                                std::size_t vm) const;

   [[nodiscard]] const std::vector<std::uint8_t>& x_data() const { return x_; }
   [[nodiscard]] const std::vector<std::uint8_t>& y_data() const { return y_; }
   [[nodiscard]] const std::vector<std::uint8_t>& z_data() const { return z_; }
   [[nodiscard]] const std::vector<std::uint8_t>& p_data() const { return p_; }

   friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
   [[nodiscard]] std::size_t cell(std::size_t a, int t) const;

   AssignmentTable table_;
   int horizon_ = 0;
   std::vector<std::uint8_t> x_, y_, z_, p_;
};

/// Sets x, y over [start, start + T), z at start and p at start + T for
/// step (chain, step) on vm. Does not check conflicts with other steps.
void place_step(const Instance& instance, Schedule& schedule,
                std::size_t chain, std::size_t step, std::size_t vm,
                int start_slot);

/// Where a step runs in a schedule that passes the checker.
struct Placement {
   std::size_t vm = 0;
   int start = 0;   ///< first busy slot (z fires)
   int finish = 0;  ///< slot where p fires; last busy slot is finish - 1
};

/// Per-step placements read off z and p, flattened step order. Requires a
/// schedule in which every step has exactly one z and one p.
[[nodiscard]] std::vector<Placement> placements(const Instance& instance,
                                                const Schedule& schedule);

// ---------------------------------------------------------------------------
// Feasibility

enum class Constraint {
   Eq3,   ///< one VM per step
   Eq4,   ///< x links to start indicators
   Eq5,   ///< one function per VM and slot
   Eq6,   ///< busy only on the chosen VM
   Eq7,   ///< busy slots equal T_ijm
   Eq8,   ///< start and finish never coincide
   Eq9,   ///< busy/start/finish transition
   Eq10,  ///< run for T_ijm slots once started
   Eq11,  ///< chain precedence
   Eq12,  ///< incapable VMs stay zero (holds by construction)
   Eq13,  ///< exactly one start and one finish per step
};

[[nodiscard]] const char* constraint_name(Constraint c);

/// Index fields use 1-based ids as printed; -1 means "not applicable".
struct Violation {
   Constraint constraint = Constraint::Eq3;
   int chain = -1;
   int step = -1;
   int vm = -1;
   int slot = -1;
   std::string detail;
};

struct FeasibilityReport {
   std::vector<Violation> violations;

   [[nodiscard]] bool feasible() const { return violations.empty(); }
   [[nodiscard]] std::size_t count(Constraint c) const;
   [[nodiscard]] std::string summary(std::size_t max_lines = 10) const;
};

/// Evaluates every constraint at every index and reports all violations.
/// Time indices before slot 1 read as zero. Throws ShapeError when the
/// schedule was not built for this instance.
[[nodiscard]] FeasibilityReport check_feasibility(const Instance& instance,
                                                  const Schedule& schedule);

// ---------------------------------------------------------------------------
// Objective and metrics (seconds)

[[nodiscard]] double chain_delay(const Instance& instance,
                                 const Schedule& schedule, std::size_t chain);
[[nodiscard]] double total_delay(const Instance& instance,
                                 const Schedule& schedule);
[[nodiscard]] double longest_delay(const Instance& instance,
                                   const Schedule& schedule);
/// Sum of busy slots times dT, divided by the VM count.
[[nodiscard]] double avg_vm_busy_time(const Instance& instance,
                                      const Schedule& schedule);

// ---------------------------------------------------------------------------
// Slack variables of the inequality penalties

/// r1 and r2 are indexed like y (assignment * horizon + t - 1); rseq by
/// successor_index(a) * horizon + t - 1 for the successor assignment a.
struct SlackAssignment {
   std::vector<std::uint8_t> r1;
   std::vector<std::uint8_t> r2;
   std::vector<std::uint8_t> rseq;

   friend bool operator==(const SlackAssignment&,
                          const SlackAssignment&) = default;
};

[[nodiscard]] SlackAssignment zero_slacks(const Schedule& schedule);

/// Slack values that zero the busy, continuity and precedence penalties:
///   r1   = x - y
///   r2   = y - sum of z over the last T_ijm slots
///   rseq = finishes of the previous step up to t - z of the next step
/// Throws InfeasibleScheduleError naming the expressions that leave {0,1}.
[[nodiscard]] SlackAssignment canonical_slacks(const Instance& instance,
                                               const Schedule& schedule);

// ---------------------------------------------------------------------------
// Gantt view

struct StepRef {
   std::size_t chain = 0;
   std::size_t step = 0;
   friend bool operator==(const StepRef&, const StepRef&) = default;
};

/// rows[vm][t - 1] holds the step occupying the VM in slot t.
struct Gantt {
   int horizon = 0;
   std::vector<std::vector<std::optional<StepRef>>> rows;
};

/// Throws InfeasibleScheduleError (with the checker summary) when the
/// schedule is not feasible.
[[nodiscard]] Gantt gantt(const Instance& instance, const Schedule& schedule);
[[nodiscard]] std::string render_gantt(const Instance& instance,
                                       const Gantt& chart);

/// The hand-made arrangement of the three-chain example, horizon 11.
[[nodiscard]] Schedule fig1_narrated_schedule(const Instance& fig1);

}  // namespace nfvq

#endif  // NFVQ_SCHEDULE_HPP_
