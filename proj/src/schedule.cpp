#include "nfvq/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "nfvq/error.hpp"

namespace nfvq {

// ---------------------------------------------------------------------------
// AssignmentTable

AssignmentTable::AssignmentTable(const Instance& instance)
    : vm_count_(instance.vm_count()) {
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      for (std::size_t j = 0; j < instance.step_count(i); ++j) {
         for (std::size_t m : instance.capable_set(i, j)) {
            items_.push_back({i, j, m, instance.processing_slots(i, j, m)});
            if (j > 0) {
               successor_.push_back(
                    static_cast<std::ptrdiff_t>(successor_count_++));
            } else {
               successor_.push_back(-1);
            }
         }
         step_first_.push_back(items_.size());
      }
      chain_first_step_.push_back(step_first_.size() - 1);
   }
}

std::size_t AssignmentTable::step_count(std::size_t chain) const {
   if (chain >= chain_count()) {
      throw IndexError("chain index out of range");
   }
   return chain_first_step_[chain + 1] - chain_first_step_[chain];
}

std::size_t AssignmentTable::flat_step(std::size_t chain,
                                       std::size_t step) const {
   if (step >= step_count(chain)) throw IndexError("step index out of range");
   return chain_first_step_[chain] + step;
}

std::optional<std::size_t> AssignmentTable::find(std::size_t chain,
                                                  std::size_t step,
                                                  std::size_t vm) const {
   const std::size_t s = flat_step(chain, step);
   for (std::size_t a = first_of(s); a < last_of(s); ++a) {
      if (items_[a].vm == vm) return a;
   }
   return std::nullopt;
}

std::optional<std::size_t> AssignmentTable::successor_index(
     std::size_t a) const {
   const std::ptrdiff_t k = successor_.at(a);
   if (k < 0) return std::nullopt;
   return static_cast<std::size_t>(k);
}

// ---------------------------------------------------------------------------
// Schedule

Schedule::Schedule(AssignmentTable table, int horizon)
    : table_(std::move(table)), horizon_(horizon) {
   if (horizon_ < 1) throw ShapeError("horizon must be at least 1 slot");
   const std::size_t cells = table_.size() * static_cast<std::size_t>(horizon_);
   x_.assign(table_.size(), 0);
   y_.assign(cells, 0);
   z_.assign(cells, 0);
   p_.assign(cells, 0);
}

Schedule::Schedule(const Instance& instance, int horizon)
    : Schedule(AssignmentTable(instance), horizon) {}

std::size_t Schedule::cell(std::size_t a, int t) const {
   if (a >= table_.size() || t < 1 || t > horizon_) {
      throw IndexError("schedule cell (" + std::to_string(a) + ", slot " +
                       std::to_string(t) + ") out of range");
   }
   return a * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(t - 1);
}

std::size_t Schedule::at(std::size_t chain, std::size_t step,
                         std::size_t vm) const {
   const auto a = table_.find(chain, step, vm);
   if (!a) {
      throw CapabilityError("no variable for VM " + std::to_string(vm + 1) +
                            " on chain " + std::to_string(chain + 1) +
                            " step " + std::to_string(step + 1));
   }
   return *a;
}

void place_step(const Instance& instance, Schedule& schedule,
                std::size_t chain, std::size_t step, std::size_t vm,
                int start_slot) {
   const std::size_t a = schedule.at(chain, step, vm);
   const int slots = instance.processing_slots(chain, step, vm);
   const int finish = start_slot + slots;
   if (start_slot < 1 || finish > schedule.horizon()) {
      throw IndexError("placement [" + std::to_string(start_slot) + ", " +
                       std::to_string(finish) + "] exceeds horizon " +
                       std::to_string(schedule.horizon()));
   }
   schedule.set_x(a, true);
   for (int t = start_slot; t < finish; ++t) schedule.set_y(a, t, true);
   schedule.set_z(a, start_slot, true);
   schedule.set_p(a, finish, true);
}

std::vector<Placement> placements(const Instance& instance,
                                  const Schedule& schedule) {
   const AssignmentTable& table = schedule.table();
   if (!(table == AssignmentTable(instance))) {
      throw ShapeError("schedule does not match instance");
   }
   std::vector<Placement> out;
   for (std::size_t s = 0; s < table.total_steps(); ++s) {
      Placement pl;
      int starts = 0;
      int finishes = 0;
      for (std::size_t a = table.first_of(s); a < table.last_of(s); ++a) {
         for (int t = 1; t <= schedule.horizon(); ++t) {
            if (schedule.z(a, t)) {
               pl.vm = table[a].vm;
               pl.start = t;
               ++starts;
            }
            if (schedule.p(a, t)) {
               pl.finish = t;
               ++finishes;
            }
         }
      }
      if (starts != 1 || finishes != 1) {
         throw MalformedScheduleError(
              "step " + std::to_string(s + 1) +
              " does not have exactly one start and one finish");
      }
      out.push_back(pl);
   }
   return out;
}

// ---------------------------------------------------------------------------
// Feasibility

const char* constraint_name(Constraint c) {
   switch (c) {
      case Constraint::Eq3: return "Eq3";
      case Constraint::Eq4: return "Eq4";
      case Constraint::Eq5: return "Eq5";
      case Constraint::Eq6: return "Eq6";
      case Constraint::Eq7: return "Eq7";
      case Constraint::Eq8: return "Eq8";
      case Constraint::Eq9: return "Eq9";
      case Constraint::Eq10: return "Eq10";
      case Constraint::Eq11: return "Eq11";
      case Constraint::Eq12: return "Eq12";
      case Constraint::Eq13: return "Eq13";
   }
   return "?";
}

std::size_t FeasibilityReport::count(Constraint c) const {
   return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [c](const Violation& v) { return v.constraint == c; }));
}

std::string FeasibilityReport::summary(std::size_t max_lines) const {
   if (feasible()) return "feasible";
   std::ostringstream os;
   os << violations.size() << " violation(s)";
   for (std::size_t k = 0; k < violations.size() && k < max_lines; ++k) {
      const Violation& v = violations[k];
      os << "\n  " << constraint_name(v.constraint) << " (i=" << v.chain
         << ", j=" << v.step << ", m=" << v.vm << ", t=" << v.slot
         << "): " << v.detail;
   }
   if (violations.size() > max_lines) os << "\n  ...";
   return os.str();
}

namespace {

int id(std::size_t index) { return static_cast<int>(index) + 1; }

// Reads a tensor with the out-of-range-is-zero convention.
struct Reader {
   const Schedule& s;
   [[nodiscard]] int y(std::size_t a, int t) const {
      return t >= 1 && t <= s.horizon() ? s.y(a, t) : 0;
   }
   [[nodiscard]] int z(std::size_t a, int t) const {
      return t >= 1 && t <= s.horizon() ? s.z(a, t) : 0;
   }
   [[nodiscard]] int p(std::size_t a, int t) const {
      return t >= 1 && t <= s.horizon() ? s.p(a, t) : 0;
   }
};

}  // namespace

FeasibilityReport check_feasibility(const Instance& instance,
                                    const Schedule& schedule) {
   const AssignmentTable& table = schedule.table();
   if (!(table == AssignmentTable(instance))) {
      throw ShapeError("schedule tensors do not match the instance shape");
   }
   const int horizon = schedule.horizon();
   const Reader rd{schedule};
   FeasibilityReport report;
   auto add = [&](Constraint c, int i, int j, int m, int t, std::string d) {
      report.violations.push_back({c, i, j, m, t, std::move(d)});
   };

   for (std::size_t s = 0; s < table.total_steps(); ++s) {
      const std::size_t first = table.first_of(s);
      const std::size_t last = table.last_of(s);
      const int ci = id(table[first].chain);
      const int sj = id(table[first].step);

      int chosen = 0;
      int starts = 0;
      int finishes = 0;
      for (std::size_t a = first; a < last; ++a) {
         chosen += schedule.x(a);
         for (int t = 1; t <= horizon; ++t) {
            starts += schedule.z(a, t);
            finishes += schedule.p(a, t);
         }
      }
      if (chosen != 1) {
         add(Constraint::Eq3, ci, sj, -1, -1,
             std::to_string(chosen) + " VMs chosen");
      }
      if (starts != 1) {
         add(Constraint::Eq13, ci, sj, -1, -1,
             std::to_string(starts) + " start indicators");
      }
      if (finishes != 1) {
         add(Constraint::Eq13, ci, sj, -1, -1,
             std::to_string(finishes) + " finish indicators");
      }

      for (std::size_t a = first; a < last; ++a) {
         const Assignment& as = table[a];
         const int mv = id(as.vm);
         const int x = schedule.x(a);
         int z_sum = 0;
         int y_sum = 0;
         for (int t = 1; t <= horizon; ++t) {
            const int y = rd.y(a, t);
            const int z = rd.z(a, t);
            const int p = rd.p(a, t);
            z_sum += z;
            y_sum += y;
            if (y > x) {
               add(Constraint::Eq6, ci, sj, mv, t, "busy on an unchosen VM");
            }
            if (z + p > 1) {
               add(Constraint::Eq8, ci, sj, mv, t, "start and finish coincide");
            }
            if (rd.y(a, t - 1) - y + z - p != 0) {
               add(Constraint::Eq9, ci, sj, mv, t,
                   "busy/start/finish transition broken");
            }
            int window = 0;
            for (int alpha = 1; alpha <= as.slots; ++alpha) {
               window += rd.z(a, t - alpha + 1);
            }
            if (window > y) {
               add(Constraint::Eq10, ci, sj, mv, t,
                   "idle within " + std::to_string(as.slots) +
                        " slots of a start");
            }
         }
         if (x != z_sum) {
            add(Constraint::Eq4, ci, sj, mv, -1,
                "x=" + std::to_string(x) + " but " + std::to_string(z_sum) +
                     " starts");
         }
         if (y_sum != as.slots * x) {
            add(Constraint::Eq7, ci, sj, mv, -1,
                std::to_string(y_sum) + " busy slots, expected " +
                     std::to_string(as.slots * x));
         }
      }

      // Precedence against the previous step of the same chain.
      if (table[first].step > 0) {
         const std::size_t prev = s - 1;
         std::vector<int> finished(static_cast<std::size_t>(horizon) + 1, 0);
         for (int t = 1; t <= horizon; ++t) {
            int f = 0;
            for (std::size_t b = table.first_of(prev); b < table.last_of(prev);
                 ++b) {
               f += schedule.p(b, t);
            }
            finished[static_cast<std::size_t>(t)] =
                 finished[static_cast<std::size_t>(t - 1)] + f;
         }
         for (std::size_t a = first; a < last; ++a) {
            for (int t = 1; t <= horizon; ++t) {
               if (finished[static_cast<std::size_t>(t)] < schedule.z(a, t)) {
                  add(Constraint::Eq11, ci, sj, id(table[a].vm), t,
                      "starts before the previous step finished");
               }
            }
         }
      }
   }

   for (std::size_t m = 0; m < table.vm_count(); ++m) {
      for (int t = 1; t <= horizon; ++t) {
         int load = 0;
         for (std::size_t a = 0; a < table.size(); ++a) {
            if (table[a].vm == m) load += schedule.y(a, t);
         }
         if (load > 1) {
            add(Constraint::Eq5, -1, -1, id(m), t,
                std::to_string(load) + " functions share the VM");
         }
      }
   }
   return report;
}

// ---------------------------------------------------------------------------
// Objective

double chain_delay(const Instance& instance, const Schedule& schedule,
                   std::size_t chain) {
   const AssignmentTable& table = schedule.table();
   if (!(table == AssignmentTable(instance))) {
      throw ShapeError("schedule does not match instance");
   }
   const std::size_t last_step = table.step_count(chain) - 1;
   const std::size_t s = table.flat_step(chain, last_step);
   int fired = 0;
   int slot = 0;
   for (std::size_t a = table.first_of(s); a < table.last_of(s); ++a) {
      for (int t = 1; t <= schedule.horizon(); ++t) {
         if (schedule.p(a, t)) {
            ++fired;
            slot = t;
         }
      }
   }
   if (fired != 1) {
      throw MalformedScheduleError(
           "chain " + std::to_string(chain + 1) + " has " +
           std::to_string(fired) + " finish indicators on its last step");
   }
   return (slot - 1) * instance.slot_length();
}

double total_delay(const Instance& instance, const Schedule& schedule) {
   double sum = 0.0;
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      sum += chain_delay(instance, schedule, i);
   }
   return sum;
}

double longest_delay(const Instance& instance, const Schedule& schedule) {
   double best = 0.0;
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      best = std::max(best, chain_delay(instance, schedule, i));
   }
   return best;
}

double avg_vm_busy_time(const Instance& instance, const Schedule& schedule) {
   if (!(schedule.table() == AssignmentTable(instance))) {
      throw ShapeError("schedule does not match instance");
   }
   long busy = 0;
   for (std::uint8_t v : schedule.y_data()) busy += v;
   return static_cast<double>(busy) * instance.slot_length() /
          static_cast<double>(instance.vm_count());
}

// ---------------------------------------------------------------------------
// Slacks

SlackAssignment zero_slacks(const Schedule& schedule) {
   const std::size_t h = static_cast<std::size_t>(schedule.horizon());
   SlackAssignment s;
   s.r1.assign(schedule.table().size() * h, 0);
   s.r2.assign(schedule.table().size() * h, 0);
   s.rseq.assign(schedule.table().successor_count() * h, 0);
   return s;
}

SlackAssignment canonical_slacks(const Instance& instance,
                                 const Schedule& schedule) {
   const AssignmentTable& table = schedule.table();
   if (!(table == AssignmentTable(instance))) {
      throw ShapeError("schedule does not match instance");
   }
   const int horizon = schedule.horizon();
   const std::size_t h = static_cast<std::size_t>(horizon);
   const Reader rd{schedule};
   SlackAssignment out = zero_slacks(schedule);
   std::vector<std::string> escapes;

   auto store = [&](std::uint8_t& dst, int value, const char* name,
                    std::size_t a, int t) {
      if (value == 0 || value == 1) {
         dst = static_cast<std::uint8_t>(value);
         return;
      }
      const Assignment& as = table[a];
      escapes.push_back(std::string(name) + "(i=" + std::to_string(id(as.chain)) +
                        ", j=" + std::to_string(id(as.step)) +
                        ", m=" + std::to_string(id(as.vm)) +
                        ", t=" + std::to_string(t) + ") = " +
                        std::to_string(value));
   };

   for (std::size_t a = 0; a < table.size(); ++a) {
      const Assignment& as = table[a];
      for (int t = 1; t <= horizon; ++t) {
         const std::size_t c = a * h + static_cast<std::size_t>(t - 1);
         store(out.r1[c], schedule.x(a) - rd.y(a, t), "r1", a, t);
         int window = 0;
         for (int alpha = 1; alpha <= as.slots; ++alpha) {
            window += rd.z(a, t - alpha + 1);
         }
         store(out.r2[c], rd.y(a, t) - window, "r2", a, t);
      }
      if (const auto k = table.successor_index(a)) {
         const std::size_t prev = table.flat_step(as.chain, as.step - 1);
         int finished = 0;
         for (int t = 1; t <= horizon; ++t) {
            for (std::size_t b = table.first_of(prev); b < table.last_of(prev);
                 ++b) {
               finished += schedule.p(b, t);
            }
            store(out.rseq[*k * h + static_cast<std::size_t>(t - 1)],
                  finished - schedule.z(a, t), "rseq", a, t);
         }
      }
   }

   if (!escapes.empty()) {
      std::ostringstream os;
      os << escapes.size() << " slack expression(s) outside {0,1}:";
      for (std::size_t k = 0; k < escapes.size() && k < 10; ++k) {
         os << "\n  " << escapes[k];
      }
      throw InfeasibleScheduleError(os.str());
   }
   return out;
}

// ---------------------------------------------------------------------------
// Gantt

Gantt gantt(const Instance& instance, const Schedule& schedule) {
   const FeasibilityReport report = check_feasibility(instance, schedule);
   if (!report.feasible()) {
      throw InfeasibleScheduleError("cannot draw an infeasible schedule: " +
                                    report.summary());
   }
   const AssignmentTable& table = schedule.table();
   Gantt chart;
   chart.horizon = schedule.horizon();
   chart.rows.assign(instance.vm_count(),
                     std::vector<std::optional<StepRef>>(
                          static_cast<std::size_t>(chart.horizon)));
   for (std::size_t a = 0; a < table.size(); ++a) {
      for (int t = 1; t <= chart.horizon; ++t) {
         if (schedule.y(a, t)) {
            chart.rows[table[a].vm][static_cast<std::size_t>(t - 1)] =
                 StepRef{table[a].chain, table[a].step};
         }
      }
   }
   return chart;
}

std::string render_gantt(const Instance& instance, const Gantt& chart) {
   std::ostringstream os;
   os << "slot ";
   for (int t = 1; t <= chart.horizon; ++t) {
      std::string n = std::to_string(t);
      os << ' ' << std::string(7 - std::min<std::size_t>(7, n.size()), ' ')
         << n;
   }
   os << '\n';
   for (std::size_t m = 0; m < chart.rows.size(); ++m) {
      std::string label = "VM" + std::to_string(m + 1);
      os << label << std::string(label.size() < 5 ? 5 - label.size() : 1, ' ');
      for (const auto& cell : chart.rows[m]) {
         std::string txt = ".";
         if (cell) {
            const int kind = instance.step(cell->chain, cell->step).kind;
            txt = "SC" + std::to_string(cell->chain + 1) + "-f" +
                  std::to_string(kind);
         }
         os << ' ' << std::string(7 - std::min<std::size_t>(7, txt.size()), ' ')
            << txt;
      }
      os << '\n';
   }
   return os.str();
}

Schedule fig1_narrated_schedule(const Instance& fig1) {
   Schedule s(fig1, 11);
   // SC1: f1 on VM1, f3 on VM1, f4 on VM3
   place_step(fig1, s, 0, 0, 0, 1);
   place_step(fig1, s, 0, 1, 0, 4);
   place_step(fig1, s, 0, 2, 2, 7);
   // SC2: f3 on VM2, waits for VM3, then f4 and f2 on VM3
   place_step(fig1, s, 1, 0, 1, 1);
   place_step(fig1, s, 1, 1, 2, 3);
   place_step(fig1, s, 1, 2, 2, 4);
   // SC3: f2 on VM3, f5 and f3 on VM2
   place_step(fig1, s, 2, 0, 2, 1);
   place_step(fig1, s, 2, 1, 1, 3);
   place_step(fig1, s, 2, 2, 1, 5);
   return s;
}

}  // namespace nfvq
