#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdm/criteria.hpp"
#include "qdm/enumerate.hpp"

namespace qdm {

struct ClassCount {
  BinaryUtility value;
  std::uint64_t count;
};

/// Histogram of PU values over every normalized lottery.
struct CensusReport {
  std::uint64_t formula_count = 0;
  std::uint64_t closed_form_count = 0;
  std::uint64_t enumerated = 0;
  /// Nonempty classes from best (<1,0>) to worst (<0,1>).
  std::vector<ClassCount> classes;
  std::optional<ClassCount> most_populated;
  /// Some consequence is valued <1,0> and some <0,1>; then every class of
  /// U_V is reachable.
  bool range_covering = false;
  /// Class sizes of <1,l> and of <l,1> never decrease as l grows. Only
  /// decided for the two-consequence space {best, worst}.
  std::optional<bool> monotone;
  std::vector<std::string> warnings;

  std::size_t class_count() const { return classes.size(); }
};

inline CensusReport census_pu_classes(const Scale& scale, const OutcomeSpace& space, const UtilityAssignment& u,
                                      std::uint64_t budget) {
  CensusReport r;
  r.warnings = check_assignment(scale, space, u);
  r.formula_count = normalized_lottery_count(space.size(), scale.size());
  r.closed_form_count = normalized_lottery_count_closed(space.size(), scale.size());

  // Position of each U_V value in best-to-worst order.
  const auto order = all_binary_utilities(scale);
  auto slot = [&](const BinaryUtility& v) -> std::size_t {
    return v.lam().is_top() ? v.mu().index : (2 * scale.top().index - v.lam().index);
  };
  std::vector<std::uint64_t> counts(order.size(), 0);
  r.enumerated = for_each_lottery(scale, space, true, budget, [&](const SimpleLottery& l) { ++counts[slot(pu(l, u))]; });

  for (std::size_t i = 0; i < order.size(); ++i) {
    if (counts[i] == 0) continue;
    r.classes.push_back({order[i], counts[i]});
    if (!r.most_populated || counts[i] > r.most_populated->count) r.most_populated = ClassCount{order[i], counts[i]};
  }

  const BinaryUtility best(scale.top(), scale.bottom()), worst(scale.bottom(), scale.top());
  r.range_covering = std::find(u.begin(), u.end(), best) != u.end() && std::find(u.begin(), u.end(), worst) != u.end();

  // <1,l> for l = 0..top occupies slots 0..top; <l,1> for l = 0..top occupies
  // slots 2*top..top.
  if (space.size() == 2) {
    const std::size_t top = scale.top().index;
    bool up = true;
    for (std::size_t l = 1; l <= top; ++l) {
      if (counts[l] < counts[l - 1]) up = false;
      if (counts[2 * top - l] < counts[2 * top - (l - 1)]) up = false;
    }
    r.monotone = up;
  }
  return r;
}

}  // namespace qdm
