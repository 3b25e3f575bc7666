#include "nfvq/solvers.hpp"

namespace nfvq {

BitSolution brute_force_bits(const QuboMatrix& q, std::size_t max_vars) {
   BitSolution best{Bits(q.size(), 0), 0.0};
   bool first = true;
   enumerate_bits(
        q,
        [&](const Bits& bits, double e) {
           if (first || e < best.energy ||
               (e == best.energy && bits < best.bits)) {
              best.bits = bits;
              best.energy = e;
              first = false;
           }
        },
        max_vars);
   best.energy = energy(q, best.bits);
   return best;
}

}  // namespace nfvq
