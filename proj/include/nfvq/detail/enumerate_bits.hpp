#ifndef NFVQ_DETAIL_ENUMERATE_BITS_HPP_
#define NFVQ_DETAIL_ENUMERATE_BITS_HPP_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "nfvq/error.hpp"
#include "nfvq/qubo.hpp"

namespace nfvq {

template <typename Visit>
void enumerate_bits(const QuboMatrix& q, Visit&& visit, std::size_t max_vars) {
   const std::size_t n = q.size();
   if (n > max_vars || n >= 63) {
      throw SizeError("bit brute force over " + std::to_string(n) +
                      " variables exceeds the limit of " +
                      std::to_string(max_vars));
   }
   Bits bits(n, 0);
   // field[v]: energy change from setting v while all else is fixed.
   std::vector<double> field(q.linear().begin(), q.linear().end());
   double e = q.offset();
   visit(static_cast<const Bits&>(bits), e);

   const std::uint64_t total = std::uint64_t{1} << n;
   for (std::uint64_t k = 1; k < total; ++k) {
      const auto v = static_cast<std::size_t>(std::countr_zero(k));
      const bool was = bits[v] != 0;
      e += was ? -field[v] : field[v];
      bits[v] = !was;
      const double sign = was ? -1.0 : 1.0;
      for (const Neighbor& nb : q.neighbors(v)) field[nb.var] += sign * nb.coeff;
      visit(static_cast<const Bits&>(bits), e);
   }
}

}  // namespace nfvq

#endif  // NFVQ_DETAIL_ENUMERATE_BITS_HPP_
