#include <climits>
#include <cmath>
#include <sstream>

#include "nfvq/error.hpp"
#include "nfvq/solvers.hpp"

namespace nfvq {

double oracle_search_space_log10(const Instance& instance, int horizon) {
   double log_space = 0.0;
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      for (std::size_t j = 0; j < instance.step_count(i); ++j) {
         log_space += std::log10(static_cast<double>(
              instance.capable_set(i, j).size() * static_cast<std::size_t>(horizon)));
      }
   }
   return log_space;
}

namespace {

struct Option {
   std::size_t vm;
   int slots;
};

struct StepInfo {
   std::size_t chain = 0;
   std::size_t step = 0;
   std::vector<Option> options;
   int rest_min = 0;  ///< sum of the fastest slot counts of later steps
};

class BranchAndBound {
 public:
   BranchAndBound(const Instance& instance, int horizon)
       : instance_(instance), horizon_(horizon) {
      for (std::size_t i = 0; i < instance.chain_count(); ++i) {
         const std::size_t first = steps_.size();
         for (std::size_t j = 0; j < instance.step_count(i); ++j) {
            StepInfo info{i, j, {}, 0};
            for (std::size_t m : instance.capable_set(i, j)) {
               info.options.push_back({m, instance.processing_slots(i, j, m)});
            }
            steps_.push_back(std::move(info));
         }
         int rest = 0;
         for (std::size_t s = steps_.size(); s-- > first;) {
            steps_[s].rest_min = rest;
            rest += instance.min_processing_slots(i, steps_[s].step);
         }
         chain_total_min_.push_back(rest);
      }
      busy_.assign(instance.vm_count(),
                   std::vector<char>(static_cast<std::size_t>(horizon) + 2, 0));
      ready_.assign(instance.chain_count(), 1);
      chain_lb_.resize(instance.chain_count());
      lower_bound_ = 0;
      for (std::size_t i = 0; i < instance.chain_count(); ++i) {
         chain_lb_[i] = 1 + chain_total_min_[i];
         lower_bound_ += chain_lb_[i] - 1;
      }
      choice_.resize(steps_.size());
   }

   void run() { descend(0); }

   [[nodiscard]] bool found() const { return best_ != INT_MAX; }
   [[nodiscard]] int best_slots() const { return best_; }
   [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

   [[nodiscard]] Schedule best_schedule() const {
      Schedule s(instance_, horizon_);
      for (std::size_t k = 0; k < steps_.size(); ++k) {
         place_step(instance_, s, steps_[k].chain, steps_[k].step,
                    best_choice_[k].first, best_choice_[k].second);
      }
      return s;
   }

 private:
   void descend(std::size_t s) {
      if (s == steps_.size()) {
         if (lower_bound_ < best_) {
            best_ = lower_bound_;
            best_choice_ = choice_;
         }
         return;
      }
      const StepInfo& info = steps_[s];
      const std::size_t i = info.chain;
      const int ready = ready_[i];
      const int old_lb = chain_lb_[i];

      for (const Option& opt : info.options) {
         std::vector<char>& row = busy_[opt.vm];
         for (int start = ready; start + opt.slots + info.rest_min <= horizon_;
              ++start) {
            const int finish = start + opt.slots;
            const int new_lb = finish + info.rest_min;
            // The bound only grows with the start slot.
            if (lower_bound_ - old_lb + new_lb >= best_) break;
            bool clash = false;
            for (int t = start; t < finish && !clash; ++t) {
               clash = row[static_cast<std::size_t>(t)] != 0;
            }
            if (clash) continue;

            ++nodes_;
            for (int t = start; t < finish; ++t) row[static_cast<std::size_t>(t)] = 1;
            ready_[i] = finish;
            chain_lb_[i] = new_lb;
            lower_bound_ += new_lb - old_lb;
            choice_[s] = {opt.vm, start};

            descend(s + 1);

            lower_bound_ -= new_lb - old_lb;
            chain_lb_[i] = old_lb;
            ready_[i] = ready;
            for (int t = start; t < finish; ++t) row[static_cast<std::size_t>(t)] = 0;
         }
      }
   }

   const Instance& instance_;
   int horizon_;
   std::vector<StepInfo> steps_;
   std::vector<int> chain_total_min_;

   std::vector<std::vector<char>> busy_;
   std::vector<int> ready_;     ///< earliest start of the chain's next step
   std::vector<int> chain_lb_;  ///< lower bound on the chain's finish slot
   int lower_bound_ = 0;        ///< sum over chains of (chain_lb - 1)
   std::vector<std::pair<std::size_t, int>> choice_;

   int best_ = INT_MAX;
   std::vector<std::pair<std::size_t, int>> best_choice_;
   std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<OracleResult> exhaustive_schedule_oracle(
     const Instance& instance, int horizon, const OracleOptions& options) {
   if (horizon < 1) throw ShapeError("horizon must be at least 1 slot");
   const double log_space = oracle_search_space_log10(instance, horizon);
   if (log_space > std::log10(options.max_search_space)) {
      std::ostringstream os;
      os << "schedule search space ~1e" << std::lround(log_space)
         << " exceeds the cap of " << options.max_search_space;
      throw SizeError(os.str());
   }
   BranchAndBound bnb(instance, horizon);
   bnb.run();
   if (!bnb.found()) return std::nullopt;
   return OracleResult{bnb.best_schedule(),
                       bnb.best_slots() * instance.slot_length(), bnb.nodes()};
}

}  // namespace nfvq
