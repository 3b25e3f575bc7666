#ifndef NFVQ_QUBO_HPP_
#define NFVQ_QUBO_HPP_

// Compilation of the scheduling ILP into a QUBO, min b^T Q b + offset over
// binary vectors b. Q is stored upper-triangular: linear terms live on the
// diagonal, each unordered pair (i < j) appears once.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nfvq/instance.hpp"
#include "nfvq/schedule.hpp"

namespace nfvq {

using Bits = std::vector<std::uint8_t>;

// ---------------------------------------------------------------------------
// Variable map

enum class Family : std::uint8_t { X, Y, Z, P, R1, R2, RSeq };

[[nodiscard]] const char* family_name(Family f);

struct VariableKey {
   Family family = Family::X;
   std::size_t assignment = 0;  ///< AssignmentTable position
   int slot = 0;                ///< 1-based; 0 for x
};

/// Flat layout: all x, then y, z, p, r1, r2, rseq, each block in
/// lexicographic (chain, step, VM, slot) order.
class VariableMap {
 public:
   VariableMap() = default;
   VariableMap(AssignmentTable table, int horizon);

   [[nodiscard]] std::size_t size() const { return offsets_.back(); }
   [[nodiscard]] std::size_t family_offset(Family f) const {
      return offsets_[static_cast<std::size_t>(f)];
   }
   [[nodiscard]] std::size_t family_size(Family f) const {
      return offsets_[static_cast<std::size_t>(f) + 1] - family_offset(f);
   }
   [[nodiscard]] const AssignmentTable& table() const { return table_; }
   [[nodiscard]] int horizon() const { return horizon_; }

   [[nodiscard]] std::size_t x(std::size_t a) const { return a; }
   [[nodiscard]] std::size_t y(std::size_t a, int t) const {
      return timed(Family::Y, a, t);
   }
   [[nodiscard]] std::size_t z(std::size_t a, int t) const {
      return timed(Family::Z, a, t);
   }
   [[nodiscard]] std::size_t p(std::size_t a, int t) const {
      return timed(Family::P, a, t);
   }
   [[nodiscard]] std::size_t r1(std::size_t a, int t) const {
      return timed(Family::R1, a, t);
   }
   [[nodiscard]] std::size_t r2(std::size_t a, int t) const {
      return timed(Family::R2, a, t);
   }
   /// a must have a successor index (step > 0).
   [[nodiscard]] std::size_t rseq(std::size_t a, int t) const;

   [[nodiscard]] VariableKey key(std::size_t position) const;
   [[nodiscard]] std::string describe(std::size_t position) const;

 private:
   [[nodiscard]] std::size_t timed(Family f, std::size_t a, int t) const {
      return family_offset(f) + a * static_cast<std::size_t>(horizon_) +
             static_cast<std::size_t>(t - 1);
   }

   AssignmentTable table_;
   int horizon_ = 0;
   std::vector<std::size_t> successor_assignment_;
   std::vector<std::size_t> offsets_ = std::vector<std::size_t>(8, 0);
};

// ---------------------------------------------------------------------------
// Numeric QUBO

struct QuadraticTerm {
   std::uint32_t row = 0;
   std::uint32_t col = 0;  ///< row < col
   double coeff = 0.0;
   friend bool operator==(const QuadraticTerm&, const QuadraticTerm&) = default;
};

struct Neighbor {
   std::uint32_t var = 0;
   double coeff = 0.0;
};

class QuboMatrix {
 public:
   QuboMatrix() = default;
   /// Terms with row > col are mirrored, row == col folds into linear and
   /// duplicates are summed. Exact zeros are dropped.
   QuboMatrix(std::size_t n, std::vector<double> linear,
              std::vector<QuadraticTerm> quadratic, double offset);

   [[nodiscard]] std::size_t size() const { return linear_.size(); }
   [[nodiscard]] double offset() const { return offset_; }
   [[nodiscard]] std::span<const double> linear() const { return linear_; }
   [[nodiscard]] std::span<const QuadraticTerm> quadratic() const {
      return quadratic_;
   }
   [[nodiscard]] std::span<const Neighbor> neighbors(std::size_t k) const {
      return {adjacency_.data() + adjacency_first_[k],
              adjacency_first_[k + 1] - adjacency_first_[k]};
   }
   [[nodiscard]] std::size_t diagonal_count() const;
   /// Mean |coefficient| over the nonzero entries of Q (1 when Q is empty).
   [[nodiscard]] double mean_abs_coefficient() const;
   /// True when the offset and every coefficient are integers.
   [[nodiscard]] bool integral() const { return integral_; }

   friend bool operator==(const QuboMatrix& a, const QuboMatrix& b) {
      return a.linear_ == b.linear_ && a.quadratic_ == b.quadratic_ &&
             a.offset_ == b.offset_;
   }

 private:
   std::vector<double> linear_;
   std::vector<QuadraticTerm> quadratic_;
   double offset_ = 0.0;
   std::vector<Neighbor> adjacency_;
   std::vector<std::size_t> adjacency_first_{0};
   bool integral_ = true;
};

/// b^T Q b + offset. Throws ShapeError on length mismatch.
[[nodiscard]] double energy(const QuboMatrix& q, std::span<const std::uint8_t> bits);
/// Integer evaluation; nullopt unless q.integral().
[[nodiscard]] std::optional<long long> energy_exact(
     const QuboMatrix& q, std::span<const std::uint8_t> bits);
/// Energy change of flipping bit k, from k's row and column only.
[[nodiscard]] double flip_delta(const QuboMatrix& q,
                                std::span<const std::uint8_t> bits,
                                std::size_t k);

// ---------------------------------------------------------------------------
// Penalties

/// One coefficient per penalty family, named after the ILP constraint the
/// family enforces.
enum class PenaltyFamily {
   OneVm,           ///< one VM per step
   StartLink,       ///< x equals its start count
   VmCapacity,      ///< pairwise busy products per VM and slot
   BusyOnChosen,    ///< y <= x with slack r1
   Duration,        ///< busy count equals T_ijm
   StartFinish,     ///< z * p
   Transition,      ///< y(t-1) - y(t) + z(t) - p(t) = 0
   Continuity,      ///< start window <= y with slack r2
   Precedence,      ///< next start after previous finish with slack rseq
   OneStartFinish,  ///< exactly one start and one finish per step
};

inline constexpr PenaltyFamily kPenaltyFamilies[] = {
     PenaltyFamily::OneVm,        PenaltyFamily::StartLink,
     PenaltyFamily::VmCapacity,   PenaltyFamily::BusyOnChosen,
     PenaltyFamily::Duration,     PenaltyFamily::StartFinish,
     PenaltyFamily::Transition,   PenaltyFamily::Continuity,
     PenaltyFamily::Precedence,   PenaltyFamily::OneStartFinish,
};

[[nodiscard]] const char* penalty_family_name(PenaltyFamily f);

struct PenaltyConfig {
   /// Uniform coefficient; defaults to 100 x objective_upper_bound.
   std::optional<double> base;
   std::map<PenaltyFamily, double> overrides;
   /// Use the duration penalty (sum_t y - T)^2 without the x factor. The
   /// printed form charges T^2 on every unchosen capable VM; off by default.
   bool printed_duration_form = false;
};

/// Largest reachable total delay: every chain finishing in the last slot,
/// I * (T_max - 1) * dT.
[[nodiscard]] double objective_upper_bound(const Instance& instance,
                                           int horizon);
[[nodiscard]] double default_penalty(const Instance& instance, int horizon);

// ---------------------------------------------------------------------------
// Model

struct QuboModel {
   Instance instance;
   int horizon = 0;
   PenaltyConfig config;
   std::map<PenaltyFamily, double> coefficients;  ///< resolved, all > 0
   VariableMap variables;
   QuboMatrix matrix;

   [[nodiscard]] std::size_t size() const { return matrix.size(); }
   /// Smallest resolved penalty coefficient.
   [[nodiscard]] double min_penalty() const;
};

/// Throws ShapeError when horizon < 2 and ValidationError when a penalty
/// coefficient is not positive.
[[nodiscard]] QuboModel build_qubo(const Instance& instance, int horizon,
                                   const PenaltyConfig& config = {});

[[nodiscard]] Bits encode(const QuboModel& model, const Schedule& schedule,
                          const SlackAssignment& slacks);

struct Decoded {
   Schedule schedule;
   SlackAssignment slacks;
};
[[nodiscard]] Decoded decode(const QuboModel& model,
                             std::span<const std::uint8_t> bits);

// ---------------------------------------------------------------------------
// Exchange with external samplers
//
//   c offset <value>
//   p qubo 0 <N> <diag_count> <offdiag_count>
//   <i> <i> <coeff>      diagonal entries first
//   <i> <j> <coeff>      then i < j
//
// Result files hold one line of N space-separated 0/1 values.

[[nodiscard]] std::string export_qubo(const QuboMatrix& q);
[[nodiscard]] QuboMatrix parse_qubo(std::string_view text);
[[nodiscard]] std::string format_result(std::span<const std::uint8_t> bits);
[[nodiscard]] Bits import_result(std::size_t n, std::string_view text);

}  // namespace nfvq

#endif  // NFVQ_QUBO_HPP_
