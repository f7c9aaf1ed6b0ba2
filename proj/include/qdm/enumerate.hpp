#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "qdm/error.hpp"
#include "qdm/lottery.hpp"
#include "qdm/scale.hpp"

namespace qdm {

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Number of simple lotteries: |V|^|X|.
inline std::uint64_t lottery_count(std::size_t outcomes, std::size_t levels) {
  return detail::sat_pow(levels, outcomes);
}

/// Normalized lotteries counted by the number k of fully possible
/// consequences: sum_k C(|X|, k) (|V| - 1)^(|X| - k).
inline std::uint64_t normalized_lottery_count(std::size_t outcomes, std::size_t levels) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= outcomes; ++k) {
    total = detail::sat_add(total, detail::sat_mul(detail::binomial(outcomes, k), detail::sat_pow(levels - 1, outcomes - k)));
  }
  return total;
}

/// Complement count |V|^|X| - (|V| - 1)^|X|.
inline std::uint64_t normalized_lottery_count_closed(std::size_t outcomes, std::size_t levels) {
  return detail::sat_pow(levels, outcomes) - detail::sat_pow(levels - 1, outcomes);
}

/// Streams every simple lottery (or every normalized one) exactly once, in
/// odometer order with the first consequence as the fastest digit. Refuses
/// when the count exceeds `budget`. Returns the number of lotteries yielded.
template <class F>
std::uint64_t for_each_lottery(const Scale& scale, const OutcomeSpace& space, bool normalized_only,
                               std::uint64_t budget, F&& f) {
  const std::uint64_t expected = normalized_only ? normalized_lottery_count(space.size(), scale.size())
                                                 : lottery_count(space.size(), scale.size());
  if (expected > budget) {
    throw BudgetExceeded("enumeration of " + std::to_string(expected) + " lotteries exceeds budget " +
                         std::to_string(budget));
  }
  SimpleLottery l = zero_lottery(scale, space);
  const std::uint16_t top = scale.top().index;
  std::uint64_t yielded = 0;
  while (true) {
    if (!normalized_only || is_normalized(l)) {
      f(static_cast<const SimpleLottery&>(l));
      ++yielded;
    }
    std::size_t i = 0;
    for (; i < l.size(); ++i) {
      if (l.degrees[i].index < top) {
        ++l.degrees[i].index;
        break;
      }
      l.degrees[i].index = 0;
    }
    if (i == l.size()) break;
  }
  return yielded;
}

inline std::vector<SimpleLottery> all_lotteries(const Scale& scale, const OutcomeSpace& space, bool normalized_only,
                                                std::uint64_t budget) {
  std::vector<SimpleLottery> out;
  for_each_lottery(scale, space, normalized_only, budget, [&](const SimpleLottery& l) { out.push_back(l); });
  return out;
}

}  // namespace qdm
