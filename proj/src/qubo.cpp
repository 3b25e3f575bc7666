#include "nfvq/qubo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "nfvq/error.hpp"

namespace nfvq {

// ---------------------------------------------------------------------------
// VariableMap

const char* family_name(Family f) {
   switch (f) {
      case Family::X: return "x";
      case Family::Y: return "y";
      case Family::Z: return "z";
      case Family::P: return "p";
      case Family::R1: return "r1";
      case Family::R2: return "r2";
      case Family::RSeq: return "rseq";
   }
   return "?";
}

VariableMap::VariableMap(AssignmentTable table, int horizon)
    : table_(std::move(table)), horizon_(horizon) {
   const std::size_t a = table_.size();
   const std::size_t h = static_cast<std::size_t>(horizon_);
   const std::size_t sizes[] = {a,     a * h, a * h, a * h,
                                a * h, a * h, table_.successor_count() * h};
   offsets_[0] = 0;
   for (std::size_t f = 0; f < 7; ++f) offsets_[f + 1] = offsets_[f] + sizes[f];
   for (std::size_t k = 0; k < table_.size(); ++k) {
      if (table_.successor_index(k)) successor_assignment_.push_back(k);
   }
}

std::size_t VariableMap::rseq(std::size_t a, int t) const {
   const auto k = table_.successor_index(a);
   if (!k) throw IndexError("first steps carry no precedence slack");
   return family_offset(Family::RSeq) + *k * static_cast<std::size_t>(horizon_) +
          static_cast<std::size_t>(t - 1);
}

VariableKey VariableMap::key(std::size_t position) const {
   if (position >= size()) throw IndexError("variable position out of range");
   std::size_t f = 0;
   while (position >= offsets_[f + 1]) ++f;
   const Family family = static_cast<Family>(f);
   const std::size_t local = position - offsets_[f];
   if (family == Family::X) return {family, local, 0};
   const std::size_t h = static_cast<std::size_t>(horizon_);
   std::size_t a = local / h;
   const int t = static_cast<int>(local % h) + 1;
   if (family == Family::RSeq) a = successor_assignment_[a];
   return {family, a, t};
}

std::string VariableMap::describe(std::size_t position) const {
   const VariableKey k = key(position);
   const Assignment& as = table_[k.assignment];
   std::string s = std::string(family_name(k.family)) + "[" +
                   std::to_string(as.chain + 1) + "," +
                   std::to_string(as.step + 1) + "," +
                   std::to_string(as.vm + 1);
   if (k.family != Family::X) s += "," + std::to_string(k.slot);
   return s + "]";
}

// ---------------------------------------------------------------------------
// QuboMatrix

namespace {

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
   return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

QuboMatrix::QuboMatrix(std::size_t n, std::vector<double> linear,
                       std::vector<QuadraticTerm> quadratic, double offset)
    : linear_(std::move(linear)), offset_(offset) {
   if (linear_.size() != n) {
      throw ShapeError("linear coefficient vector has wrong length");
   }
   if (n > 0xffffffffULL) throw SizeError("too many variables");

   for (QuadraticTerm& q : quadratic) {
      if (q.row >= n || q.col >= n) {
         throw IndexError("quadratic term index out of range");
      }
      if (q.row > q.col) std::swap(q.row, q.col);
   }
   std::stable_sort(quadratic.begin(), quadratic.end(),
                    [](const QuadraticTerm& a, const QuadraticTerm& b) {
                       return pair_key(a.row, a.col) < pair_key(b.row, b.col);
                    });
   for (const QuadraticTerm& q : quadratic) {
      if (q.row == q.col) {
         linear_[q.row] += q.coeff;
      } else if (!quadratic_.empty() && quadratic_.back().row == q.row &&
                 quadratic_.back().col == q.col) {
         quadratic_.back().coeff += q.coeff;
      } else {
         quadratic_.push_back(q);
      }
   }
   std::erase_if(quadratic_, [](const QuadraticTerm& q) { return q.coeff == 0.0; });

   integral_ = is_integer(offset_);
   for (double c : linear_) integral_ = integral_ && is_integer(c);
   for (const auto& q : quadratic_) integral_ = integral_ && is_integer(q.coeff);

   std::vector<std::size_t> degree(n, 0);
   for (const auto& q : quadratic_) {
      ++degree[q.row];
      ++degree[q.col];
   }
   adjacency_first_.assign(n + 1, 0);
   for (std::size_t k = 0; k < n; ++k) {
      adjacency_first_[k + 1] = adjacency_first_[k] + degree[k];
   }
   adjacency_.resize(adjacency_first_[n]);
   std::vector<std::size_t> fill(adjacency_first_.begin(),
                                 adjacency_first_.end() - 1);
   for (const auto& q : quadratic_) {
      adjacency_[fill[q.row]++] = {q.col, q.coeff};
      adjacency_[fill[q.col]++] = {q.row, q.coeff};
   }
}

std::size_t QuboMatrix::diagonal_count() const {
   return static_cast<std::size_t>(
        std::count_if(linear_.begin(), linear_.end(),
                      [](double c) { return c != 0.0; }));
}

double QuboMatrix::mean_abs_coefficient() const {
   double sum = 0.0;
   std::size_t count = 0;
   for (double c : linear_) {
      if (c != 0.0) {
         sum += std::abs(c);
         ++count;
      }
   }
   for (const auto& q : quadratic_) {
      sum += std::abs(q.coeff);
      ++count;
   }
   return count == 0 ? 1.0 : sum / static_cast<double>(count);
}

double energy(const QuboMatrix& q, std::span<const std::uint8_t> bits) {
   if (bits.size() != q.size()) {
      throw ShapeError("bit vector has length " + std::to_string(bits.size()) +
                       ", model has " + std::to_string(q.size()) + " variables");
   }
   double e = 0.0;
   const auto lin = q.linear();
   for (std::size_t k = 0; k < bits.size(); ++k) {
      if (bits[k]) e += lin[k];
   }
   for (const auto& t : q.quadratic()) {
      if (bits[t.row] && bits[t.col]) e += t.coeff;
   }
   return e + q.offset();
}

std::optional<long long> energy_exact(const QuboMatrix& q,
                                      std::span<const std::uint8_t> bits) {
   if (!q.integral()) return std::nullopt;
   if (bits.size() != q.size()) throw ShapeError("bit vector length mismatch");
   long long e = std::llround(q.offset());
   const auto lin = q.linear();
   for (std::size_t k = 0; k < bits.size(); ++k) {
      if (bits[k]) e += std::llround(lin[k]);
   }
   for (const auto& t : q.quadratic()) {
      if (bits[t.row] && bits[t.col]) e += std::llround(t.coeff);
   }
   return e;
}

double flip_delta(const QuboMatrix& q, std::span<const std::uint8_t> bits,
                  std::size_t k) {
   if (bits.size() != q.size() || k >= q.size()) {
      throw ShapeError("flip index or bit vector out of range");
   }
   double field = q.linear()[k];
   for (const Neighbor& nb : q.neighbors(k)) {
      if (bits[nb.var]) field += nb.coeff;
   }
   return bits[k] ? -field : field;
}

// ---------------------------------------------------------------------------
// Penalties

const char* penalty_family_name(PenaltyFamily f) {
   switch (f) {
      case PenaltyFamily::OneVm: return "one_vm";
      case PenaltyFamily::StartLink: return "start_link";
      case PenaltyFamily::VmCapacity: return "vm_capacity";
      case PenaltyFamily::BusyOnChosen: return "busy_on_chosen";
      case PenaltyFamily::Duration: return "duration";
      case PenaltyFamily::StartFinish: return "start_finish";
      case PenaltyFamily::Transition: return "transition";
      case PenaltyFamily::Continuity: return "continuity";
      case PenaltyFamily::Precedence: return "precedence";
      case PenaltyFamily::OneStartFinish: return "one_start_finish";
   }
   return "?";
}

double objective_upper_bound(const Instance& instance, int horizon) {
   return static_cast<double>(instance.chain_count()) * (horizon - 1) *
          instance.slot_length();
}

double default_penalty(const Instance& instance, int horizon) {
   return 100.0 * objective_upper_bound(instance, horizon);
}

double QuboModel::min_penalty() const {
   double m = 0.0;
   for (const auto& [family, c] : coefficients) {
      if (m == 0.0 || c < m) m = c;
   }
   return m;
}

namespace {

/// sum_k coeff_k * var_k + constant
struct LinearExpr {
   std::vector<std::pair<std::size_t, double>> terms;
   double constant = 0.0;

   void add(std::size_t var, double c) { terms.emplace_back(var, c); }
};

/// Collects a quadratic polynomial in binaries. Only constant, linear and
/// pairwise terms can be expressed, so nothing of degree > 2 is generated.
class Accumulator {
 public:
   explicit Accumulator(std::size_t n) : linear_(n, 0.0) {}

   void add_constant(double c) { offset_ += c; }
   void add_linear(std::size_t v, double c) { linear_.at(v) += c; }
   void add_product(std::size_t u, std::size_t v, double c) {
      if (u == v) {  // b * b = b
         add_linear(u, c);
         return;
      }
      if (u > v) std::swap(u, v);
      if (v >= linear_.size()) throw IndexError("product term out of range");
      const std::uint64_t key = pair_key(static_cast<std::uint32_t>(u),
                                         static_cast<std::uint32_t>(v));
      auto [it, fresh] = quadratic_.try_emplace(key, c);
      if (!fresh) it->second += c;
   }

   /// weight * (expr)^2 expanded with b^2 = b.
   void add_squared(double weight, LinearExpr expr) {
      auto& t = expr.terms;
      std::sort(t.begin(), t.end());
      std::size_t w = 0;
      for (std::size_t r = 0; r < t.size(); ++r) {
         if (w > 0 && t[w - 1].first == t[r].first) {
            t[w - 1].second += t[r].second;
         } else {
            t[w++] = t[r];
         }
      }
      t.resize(w);
      const double c0 = expr.constant;
      for (std::size_t a = 0; a < t.size(); ++a) {
         const auto [va, ca] = t[a];
         add_linear(va, weight * (ca * ca + 2.0 * c0 * ca));
         for (std::size_t b = a + 1; b < t.size(); ++b) {
            add_product(va, t[b].first, weight * 2.0 * ca * t[b].second);
         }
      }
      add_constant(weight * c0 * c0);
   }

   QuboMatrix finish() && {
      std::vector<QuadraticTerm> quad;
      quad.reserve(quadratic_.size());
      for (const auto& [key, c] : quadratic_) {
         quad.push_back({static_cast<std::uint32_t>(key >> 32),
                         static_cast<std::uint32_t>(key & 0xffffffffU), c});
      }
      const std::size_t n = linear_.size();
      return QuboMatrix(n, std::move(linear_), std::move(quad), offset_);
   }

 private:
   std::vector<double> linear_;
   std::unordered_map<std::uint64_t, double> quadratic_;
   double offset_ = 0.0;
};

}  // namespace

QuboModel build_qubo(const Instance& instance, int horizon,
                     const PenaltyConfig& config) {
   if (horizon < 2) {
      throw ShapeError("horizon " + std::to_string(horizon) +
                       " cannot represent any finished function");
   }
   QuboModel model;
   model.instance = instance;
   model.horizon = horizon;
   model.config = config;
   const double base = config.base.value_or(default_penalty(instance, horizon));
   for (PenaltyFamily f : kPenaltyFamilies) {
      const auto it = config.overrides.find(f);
      const double c = it == config.overrides.end() ? base : it->second;
      if (!(c > 0.0) || !std::isfinite(c)) {
         throw ValidationError(std::string("penalty coefficient for ") +
                               penalty_family_name(f) + " must be positive");
      }
      model.coefficients[f] = c;
   }
   auto P = [&](PenaltyFamily f) { return model.coefficients.at(f); };

   model.variables = VariableMap(AssignmentTable(instance), horizon);
   const VariableMap& vm = model.variables;
   const AssignmentTable& table = vm.table();
   const double dt = instance.slot_length();
   Accumulator acc(vm.size());

   // Objective: finish slot of every chain's last step, weighted (t - 1) dT.
   for (std::size_t i = 0; i < instance.chain_count(); ++i) {
      const std::size_t s = table.flat_step(i, table.step_count(i) - 1);
      for (std::size_t a = table.first_of(s); a < table.last_of(s); ++a) {
         for (int t = 1; t <= horizon; ++t) {
            acc.add_linear(vm.p(a, t), (t - 1) * dt);
         }
      }
   }

   for (std::size_t s = 0; s < table.total_steps(); ++s) {
      const std::size_t first = table.first_of(s);
      const std::size_t last = table.last_of(s);

      // Exactly one VM.
      LinearExpr one_vm{{}, -1.0};
      for (std::size_t a = first; a < last; ++a) one_vm.add(vm.x(a), 1.0);
      acc.add_squared(P(PenaltyFamily::OneVm), std::move(one_vm));

      // Exactly one start and one finish across all VMs and slots.
      LinearExpr starts{{}, -1.0};
      LinearExpr finishes{{}, -1.0};
      for (std::size_t a = first; a < last; ++a) {
         for (int t = 1; t <= horizon; ++t) {
            starts.add(vm.z(a, t), 1.0);
            finishes.add(vm.p(a, t), 1.0);
         }
      }
      acc.add_squared(P(PenaltyFamily::OneStartFinish), std::move(starts));
      acc.add_squared(P(PenaltyFamily::OneStartFinish), std::move(finishes));

      for (std::size_t a = first; a < last; ++a) {
         const int slots = table[a].slots;

         LinearExpr link;
         for (int t = 1; t <= horizon; ++t) link.add(vm.z(a, t), 1.0);
         link.add(vm.x(a), -1.0);
         acc.add_squared(P(PenaltyFamily::StartLink), std::move(link));

         LinearExpr duration;
         for (int t = 1; t <= horizon; ++t) duration.add(vm.y(a, t), 1.0);
         if (config.printed_duration_form) {
            duration.constant = -slots;
         } else {
            duration.add(vm.x(a), -static_cast<double>(slots));
         }
         acc.add_squared(P(PenaltyFamily::Duration), std::move(duration));

         for (int t = 1; t <= horizon; ++t) {
            // y <= x; x - y is 0 or 1, so one binary slack closes the gap.
            acc.add_squared(P(PenaltyFamily::BusyOnChosen),
                            {{{vm.y(a, t), 1.0},
                              {vm.x(a), -1.0},
                              {vm.r1(a, t), 1.0}},
                             0.0});

            acc.add_product(vm.z(a, t), vm.p(a, t), P(PenaltyFamily::StartFinish));

            LinearExpr transition;
            if (t > 1) transition.add(vm.y(a, t - 1), 1.0);
            transition.add(vm.y(a, t), -1.0);
            transition.add(vm.z(a, t), 1.0);
            transition.add(vm.p(a, t), -1.0);
            acc.add_squared(P(PenaltyFamily::Transition), std::move(transition));

            // The start window holds at most one start once the single-start
            // penalty is met, so y - window is 0 or 1 and one slack suffices.
            LinearExpr continuity;
            for (int alpha = 1; alpha <= slots; ++alpha) {
               const int u = t - alpha + 1;
               if (u >= 1) continuity.add(vm.z(a, u), 1.0);
            }
            continuity.add(vm.y(a, t), -1.0);
            continuity.add(vm.r2(a, t), 1.0);
            acc.add_squared(P(PenaltyFamily::Continuity), std::move(continuity));
         }

         // Next step may start only once the previous one has finished;
         // finishes-so-far minus this start is 0 or 1, one slack again.
         if (table.successor_index(a)) {
            const std::size_t prev = s - 1;
            for (int t = 1; t <= horizon; ++t) {
               LinearExpr precedence;
               precedence.add(vm.z(a, t), 1.0);
               for (std::size_t b = table.first_of(prev); b < table.last_of(prev);
                    ++b) {
                  for (int u = 1; u <= t; ++u) precedence.add(vm.p(b, u), -1.0);
               }
               precedence.add(vm.rseq(a, t), 1.0);
               acc.add_squared(P(PenaltyFamily::Precedence), std::move(precedence));
            }
         }
      }
   }

   // One function per VM and slot: penalize every pair sharing a VM.
   for (std::size_t m = 0; m < table.vm_count(); ++m) {
      std::vector<std::size_t> on_vm;
      for (std::size_t a = 0; a < table.size(); ++a) {
         if (table[a].vm == m) on_vm.push_back(a);
      }
      for (int t = 1; t <= horizon; ++t) {
         for (std::size_t u = 0; u < on_vm.size(); ++u) {
            for (std::size_t v = u + 1; v < on_vm.size(); ++v) {
               acc.add_product(vm.y(on_vm[u], t), vm.y(on_vm[v], t),
                               P(PenaltyFamily::VmCapacity));
            }
         }
      }
   }

   model.matrix = std::move(acc).finish();
   return model;
}

Bits encode(const QuboModel& model, const Schedule& schedule,
            const SlackAssignment& slacks) {
   const VariableMap& vm = model.variables;
   if (!(schedule.table() == vm.table()) || schedule.horizon() != vm.horizon()) {
      throw ShapeError("schedule does not match the model layout");
   }
   const std::size_t cells = vm.family_size(Family::Y);
   if (slacks.r1.size() != cells || slacks.r2.size() != cells ||
       slacks.rseq.size() != vm.family_size(Family::RSeq)) {
      throw ShapeError("slack assignment does not match the model layout");
   }
   Bits bits(vm.size(), 0);
   auto put = [&](Family f, const std::vector<std::uint8_t>& src) {
      std::copy(src.begin(), src.end(),
                bits.begin() + static_cast<std::ptrdiff_t>(vm.family_offset(f)));
   };
   put(Family::X, schedule.x_data());
   put(Family::Y, schedule.y_data());
   put(Family::Z, schedule.z_data());
   put(Family::P, schedule.p_data());
   put(Family::R1, slacks.r1);
   put(Family::R2, slacks.r2);
   put(Family::RSeq, slacks.rseq);
   return bits;
}

Decoded decode(const QuboModel& model, std::span<const std::uint8_t> bits) {
   const VariableMap& vm = model.variables;
   if (bits.size() != vm.size()) {
      throw ShapeError("bit vector has length " + std::to_string(bits.size()) +
                       ", model has " + std::to_string(vm.size()));
   }
   Decoded out{Schedule(vm.table(), vm.horizon()), {}};
   Schedule& s = out.schedule;
   for (std::size_t a = 0; a < vm.table().size(); ++a) {
      s.set_x(a, bits[vm.x(a)] != 0);
      for (int t = 1; t <= vm.horizon(); ++t) {
         s.set_y(a, t, bits[vm.y(a, t)] != 0);
         s.set_z(a, t, bits[vm.z(a, t)] != 0);
         s.set_p(a, t, bits[vm.p(a, t)] != 0);
      }
   }
   out.slacks = zero_slacks(s);
   auto take = [&](Family f, std::vector<std::uint8_t>& dst) {
      const std::size_t off = vm.family_offset(f);
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = bits[off + k] != 0;
   };
   take(Family::R1, out.slacks.r1);
   take(Family::R2, out.slacks.r2);
   take(Family::RSeq, out.slacks.rseq);
   return out;
}

// ---------------------------------------------------------------------------
// Exchange

namespace {

std::string number(double v) {
   char buf[64];
   const auto res = std::to_chars(buf, buf + sizeof buf, v);
   return std::string(buf, res.ptr);
}

double parse_number(std::string_view tok) {
   double v = 0.0;
   const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
   if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ParseError("bad number '" + std::string(tok) + "'");
   }
   return v;
}

unsigned long long parse_index(std::string_view tok) {
   unsigned long long v = 0;
   const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
   if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ParseError("bad index '" + std::string(tok) + "'");
   }
   return v;
}

std::vector<std::string_view> tokens(std::string_view line) {
   std::vector<std::string_view> out;
   std::size_t k = 0;
   while (k < line.size()) {
      while (k < line.size() && (line[k] == ' ' || line[k] == '\t' ||
                                 line[k] == '\r')) {
         ++k;
      }
      const std::size_t start = k;
      while (k < line.size() && line[k] != ' ' && line[k] != '\t' &&
             line[k] != '\r') {
         ++k;
      }
      if (k > start) out.push_back(line.substr(start, k - start));
   }
   return out;
}

}  // namespace

std::string export_qubo(const QuboMatrix& q) {
   std::string out;
   out += "c offset " + number(q.offset()) + "\n";
   out += "p qubo 0 " + std::to_string(q.size()) + " " +
          std::to_string(q.diagonal_count()) + " " +
          std::to_string(q.quadratic().size()) + "\n";
   const auto lin = q.linear();
   for (std::size_t k = 0; k < lin.size(); ++k) {
      if (lin[k] == 0.0) continue;
      out += std::to_string(k) + " " + std::to_string(k) + " " + number(lin[k]) +
             "\n";
   }
   for (const auto& t : q.quadratic()) {
      out += std::to_string(t.row) + " " + std::to_string(t.col) + " " +
             number(t.coeff) + "\n";
   }
   return out;
}

QuboMatrix parse_qubo(std::string_view text) {
   std::optional<std::size_t> n;
   std::size_t diag_expected = 0;
   std::size_t off_expected = 0;
   double offset = 0.0;
   std::vector<double> linear;
   std::vector<QuadraticTerm> quad;
   std::size_t diag_seen = 0;

   std::size_t pos = 0;
   std::size_t line_no = 0;
   while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::string_view line =
           text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                         : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      const auto tok = tokens(line);
      if (tok.empty()) continue;
      const std::string where = "qubo line " + std::to_string(line_no);
      if (tok[0] == "c") {
         if (tok.size() == 3 && tok[1] == "offset") offset = parse_number(tok[2]);
         continue;
      }
      if (tok[0] == "p") {
         if (n || tok.size() != 6 || tok[1] != "qubo") {
            throw ParseError(where + ": bad problem line");
         }
         n = parse_index(tok[3]);
         diag_expected = parse_index(tok[4]);
         off_expected = parse_index(tok[5]);
         linear.assign(*n, 0.0);
         continue;
      }
      if (!n) throw ParseError(where + ": entry before problem line");
      if (tok.size() != 3) throw ParseError(where + ": expected '<i> <j> <coeff>'");
      const auto i = parse_index(tok[0]);
      const auto j = parse_index(tok[1]);
      const double c = parse_number(tok[2]);
      if (i >= *n || j >= *n || i > j) {
         throw IndexError(where + ": entry (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") outside the upper triangle");
      }
      if (i == j) {
         if (!quad.empty()) throw ParseError(where + ": diagonal after couplers");
         linear[i] += c;
         ++diag_seen;
      } else {
         quad.push_back({static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(j), c});
      }
   }
   if (!n) throw ParseError("qubo: missing problem line");
   if (diag_seen != diag_expected || quad.size() != off_expected) {
      throw ParseError("qubo: entry counts disagree with the problem line");
   }
   return QuboMatrix(*n, std::move(linear), std::move(quad), offset);
}

std::string format_result(std::span<const std::uint8_t> bits) {
   std::string out;
   out.reserve(bits.size() * 2);
   for (std::size_t k = 0; k < bits.size(); ++k) {
      if (k) out += ' ';
      out += bits[k] ? '1' : '0';
   }
   return out + "\n";
}

Bits import_result(std::size_t n, std::string_view text) {
   Bits bits;
   for (std::string_view tok : tokens(text)) {
      // tokens() only splits on blanks; allow a trailing newline.
      while (!tok.empty() && tok.back() == '\n') tok.remove_suffix(1);
      if (tok.empty()) continue;
      if (tok.find('\n') != std::string_view::npos) {
         throw ParseError("result file must be a single line");
      }
      if (tok != "0" && tok != "1") {
         throw ParseError("result value '" + std::string(tok) + "' is not 0/1");
      }
      bits.push_back(tok == "1");
   }
   if (bits.size() != n) {
      throw ShapeError("result has " + std::to_string(bits.size()) +
                       " values, model has " + std::to_string(n) + " variables");
   }
   return bits;
}

}  // namespace nfvq
