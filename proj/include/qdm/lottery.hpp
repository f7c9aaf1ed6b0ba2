#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "qdm/error.hpp"
#include "qdm/scale.hpp"

namespace qdm {

/// Index of a consequence inside its OutcomeSpace.
struct Outcome {
  std::size_t index = 0;
  friend bool operator==(Outcome, Outcome) = default;
};

/// Named consequences listed from most to least preferred. The best and
/// worst consequences are therefore the first and last entries.
class OutcomeSpace {
 public:
  OutcomeSpace(std::vector<std::string> names, std::string_view best, std::string_view worst)
      : names_(std::move(names)) {
    if (names_.size() < 2) throw InvalidArgument("an outcome space needs at least two consequences");
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names_) {
      if (!seen.insert(n).second) throw InvalidArgument("duplicate consequence '" + n + "'");
    }
    if (names_.front() != best) {
      throw InvalidArgument("best consequence '" + std::string(best) +
                            "' must be listed first (consequences are in decreasing preference)");
    }
    if (names_.back() != worst) {
      throw InvalidArgument("worst consequence '" + std::string(worst) +
                            "' must be listed last (consequences are in decreasing preference)");
    }
  }

  /// x1 ... xn with x1 best and xn worst.
  static OutcomeSpace numbered(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    if (n < 2) throw InvalidArgument("an outcome space needs at least two consequences");
    std::string best = names.front(), worst = names.back();
    return OutcomeSpace(std::move(names), best, worst);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Outcome x) const { return names_.at(x.index); }

  Outcome best() const { return Outcome{0}; }
  Outcome worst() const { return Outcome{names_.size() - 1}; }

  std::optional<Outcome> find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return Outcome{static_cast<std::size_t>(it - names_.begin())};
  }

  Outcome at(std::string_view name) const {
    if (auto x = find(name)) return *x;
    throw InvalidArgument("unknown consequence '" + std::string(name) + "'");
  }

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

 private:
  std::vector<std::string> names_;
};

/// A total map from consequences (by index) to degrees. With Level degrees
/// this is a classical simple lottery; the refined module instantiates it
/// with WValue degrees.
template <class Degree>
struct Distribution {
  std::vector<Degree> degrees;

  std::size_t size() const { return degrees.size(); }
  const Degree& operator[](Outcome x) const { return degrees.at(x.index); }
  Degree& operator[](Outcome x) { return degrees.at(x.index); }

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

template <class Degree>
struct MixtureBranch;

/// A lottery over lotteries. Leaves may be bare consequences, which stand for
/// the degenerate lottery on that consequence.
template <class Degree>
struct Mixture {
  std::vector<MixtureBranch<Degree>> branches;

  friend bool operator==(const Mixture&, const Mixture&) = default;
};

template <class Degree>
struct MixtureBranch {
  Degree coefficient;
  std::variant<Outcome, Distribution<Degree>, Mixture<Degree>> child;

  friend bool operator==(const MixtureBranch&, const MixtureBranch&) = default;
};

using SimpleLottery = Distribution<Level>;
using CompoundLottery = Mixture<Level>;
using CompoundBranch = MixtureBranch<Level>;

inline void validate(const Scale& scale, const OutcomeSpace& space, const SimpleLottery& l) {
  if (l.size() != space.size()) {
    throw ScaleMismatch("lottery has " + std::to_string(l.size()) + " degrees, outcome space has " +
                        std::to_string(space.size()) + " consequences");
  }
  for (Level d : l.degrees) scale.validate(d);
}

/// True iff some consequence is fully possible.
inline bool is_normalized(const SimpleLottery& l) {
  return std::any_of(l.degrees.begin(), l.degrees.end(), [](Level d) { return d.is_top(); });
}

inline bool is_all_zero(const SimpleLottery& l) {
  return std::all_of(l.degrees.begin(), l.degrees.end(), [](Level d) { return d.is_bottom(); });
}

inline SimpleLottery zero_lottery(const Scale& scale, const OutcomeSpace& space) {
  return SimpleLottery{std::vector<Level>(space.size(), scale.bottom())};
}

inline SimpleLottery degenerate(const Scale& scale, const OutcomeSpace& space, Outcome x) {
  if (x.index >= space.size()) throw InvalidArgument("unknown consequence index " + std::to_string(x.index));
  SimpleLottery l = zero_lottery(scale, space);
  l[x] = scale.top();
  return l;
}

/// [lam/best, mu/worst]. Unconstrained: pairs with lam ∨ mu = top are the
/// normalized canonical lotteries.
inline SimpleLottery canonical(const Scale& scale, const OutcomeSpace& space, Level lam, Level mu) {
  scale.validate(lam);
  scale.validate(mu);
  SimpleLottery l = zero_lottery(scale, space);
  l[space.best()] = lam;
  l[space.worst()] = mu;
  return l;
}

/// The (V, max, min) structure used to reduce classical compound lotteries.
struct PossibilisticAlgebra {
  Level bottom;
  Level top;

  explicit PossibilisticAlgebra(const Scale& scale) : bottom(scale.bottom()), top(scale.top()) {}

  Level zero() const { return bottom; }
  Level one() const { return top; }
  Level add(Level a, Level b) const { return join(a, b); }
  Level mul(Level a, Level b) const { return meet(a, b); }
};

namespace detail {

template <class Degree, class Algebra>
Distribution<Degree> reduce_mixture(const Mixture<Degree>& m, std::size_t outcomes, const Algebra& alg) {
  if (m.branches.empty()) throw InvalidArgument("a compound lottery needs at least one branch");
  Distribution<Degree> out{std::vector<Degree>(outcomes, alg.zero())};
  for (const auto& branch : m.branches) {
    auto mix_in = [&](const Distribution<Degree>& child) {
      if (child.size() != outcomes) {
        throw ScaleMismatch("sub-lottery has " + std::to_string(child.size()) +
                            " degrees, expected " + std::to_string(outcomes));
      }
      for (std::size_t x = 0; x < outcomes; ++x) {
        out.degrees[x] = alg.add(out.degrees[x], alg.mul(branch.coefficient, child.degrees[x]));
      }
    };
    if (const auto* x = std::get_if<Outcome>(&branch.child)) {
      if (x->index >= outcomes) throw InvalidArgument("unknown consequence index " + std::to_string(x->index));
      Distribution<Degree> point{std::vector<Degree>(outcomes, alg.zero())};
      point.degrees[x->index] = alg.one();
      mix_in(point);
    } else if (const auto* d = std::get_if<Distribution<Degree>>(&branch.child)) {
      mix_in(*d);
    } else {
      mix_in(reduce_mixture(std::get<Mixture<Degree>>(branch.child), outcomes, alg));
    }
  }
  return out;
}

}  // namespace detail

/// Collapses a compound lottery bottom-up with
/// [l1/p1, ..., lm/pm](x) = max_i min(l_i, p_i(x)).
inline SimpleLottery reduce_r(const Scale& scale, const OutcomeSpace& space, const CompoundLottery& c) {
  auto check = [&](const auto& self, const CompoundLottery& m) -> void {
    for (const auto& b : m.branches) {
      scale.validate(b.coefficient);
      if (const auto* d = std::get_if<SimpleLottery>(&b.child)) validate(scale, space, *d);
      if (const auto* sub = std::get_if<CompoundLottery>(&b.child)) self(self, *sub);
    }
  };
  check(check, c);
  return detail::reduce_mixture(c, space.size(), PossibilisticAlgebra(scale));
}

/// A simple lottery is already reduced.
inline SimpleLottery reduce_r(const Scale& scale, const OutcomeSpace& space, const SimpleLottery& l) {
  validate(scale, space, l);
  return l;
}

/// Two-branch mixture [lam/first, mu/second] of simple lotteries.
inline CompoundLottery mix(Level lam, const SimpleLottery& first, Level mu, const SimpleLottery& second) {
  CompoundLottery c;
  c.branches.push_back(CompoundBranch{lam, first});
  c.branches.push_back(CompoundBranch{mu, second});
  return c;
}

}  // namespace qdm
