#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdm/criteria.hpp"
#include "qdm/error.hpp"
#include "qdm/lottery.hpp"
#include "qdm/scale.hpp"

namespace qdm {

/// Duplicate handling for the two refined operators. The defaults keep
/// repeated elements under nabla and collapse repeated pairwise merges under
/// delta.
struct RefinedPolicy {
  bool nabla_dedupe = false;
  bool delta_dedupe = true;

  friend bool operator==(const RefinedPolicy&, const RefinedPolicy&) = default;
};

/// A nonempty, strictly increasing sequence of levels from one scale.
class IncreasingSeq {
 public:
  explicit IncreasingSeq(std::vector<Level> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw InvalidArgument("an increasing sequence cannot be empty");
    for (std::size_t i = 1; i < levels_.size(); ++i) {
      if (!(levels_[i - 1] < levels_[i])) throw InvalidArgument("sequence levels must strictly increase");
    }
  }

  const std::vector<Level>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  Level front() const { return levels_.front(); }
  Level top() const { return Level{levels_.front().top, levels_.front().top}; }

  /// i-th element; positions past the end read as top.
  Level at_padded(std::size_t i) const { return i < levels_.size() ? levels_[i] : top(); }

  friend bool operator==(const IncreasingSeq&, const IncreasingSeq&) = default;

 private:
  std::vector<Level> levels_;
};

/// Sorts and removes duplicates; the output holds exactly the input's levels.
inline IncreasingSeq rank_increasing(std::span<const Level> levels) {
  if (levels.empty()) throw InvalidArgument("rank_increasing needs at least one level");
  std::vector<Level> v(levels.begin(), levels.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return IncreasingSeq(std::move(v));
}

inline IncreasingSeq rank_increasing(std::initializer_list<Level> levels) {
  return rank_increasing(std::span<const Level>(levels.begin(), levels.size()));
}

/// Lexicographic order with top-padding: (0.5) compares above (0.5, 0.6).
inline Ordering lex_cmp(const IncreasingSeq& a, const IncreasingSeq& b) {
  require_same_scale(a.front(), b.front());
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Level x = a.at_padded(i), y = b.at_padded(i);
    if (x.index != y.index) return x.index > y.index ? Ordering::Greater : Ordering::Less;
  }
  return Ordering::Equal;
}

namespace detail {

/// Strict total order on sequences: descending lex, and among lex-equal
/// sequences (which differ only by a trailing top) the shorter first.
inline bool canonical_before(const IncreasingSeq& a, const IncreasingSeq& b) {
  switch (lex_cmp(a, b)) {
    case Ordering::Greater: return true;
    case Ordering::Less: return false;
    default: return a.size() < b.size();
  }
}

}  // namespace detail

/// A weakly decreasing (under lex_cmp) sequence of increasing sequences. The
/// empty value is the zero element.
class WValue {
 public:
  WValue() = default;

  /// Elements must already be weakly decreasing. Singleton (bottom) elements
  /// are dropped; any other element containing bottom is rejected.
  explicit WValue(std::vector<IncreasingSeq> elems) {
    for (auto& s : elems) {
      if (s.size() == 1 && s.front().is_bottom()) continue;
      if (s.front().is_bottom()) throw InvalidArgument("bottom may only appear as the zero element");
      elems_.push_back(std::move(s));
    }
    for (std::size_t i = 1; i < elems_.size(); ++i) {
      if (lex_cmp(elems_[i - 1], elems_[i]) == Ordering::Less) {
        throw InvalidArgument("elements must be ordered decreasingly");
      }
    }
    std::stable_sort(elems_.begin(), elems_.end(), detail::canonical_before);
  }

  /// Sorts the elements first.
  static WValue from_unsorted(std::vector<IncreasingSeq> elems) {
    std::sort(elems.begin(), elems.end(), detail::canonical_before);
    return WValue(std::move(elems));
  }

  bool is_zero() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  const std::vector<IncreasingSeq>& elems() const { return elems_; }

  /// alpha_{1,1}: the first level of the first element; nullopt for zero.
  std::optional<Level> first_level() const {
    if (elems_.empty()) return std::nullopt;
    return elems_.front().front();
  }

  friend bool operator==(const WValue&, const WValue&) = default;

 private:
  std::vector<IncreasingSeq> elems_;
};

namespace detail {

inline void require_same_scale(const WValue& a, const WValue& b) {
  if (!a.is_zero() && !b.is_zero()) qdm::require_same_scale(a.elems().front().front(), b.elems().front().front());
}

inline void sort_and_dedupe(std::vector<IncreasingSeq>& v, bool dedupe) {
  std::sort(v.begin(), v.end(), canonical_before);
  if (dedupe) v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Merge of both element lists, re-ranked decreasingly.
inline WValue nabla(const WValue& a, const WValue& b, const RefinedPolicy& policy = {}) {
  detail::require_same_scale(a, b);
  std::vector<IncreasingSeq> v;
  v.reserve(a.size() + b.size());
  v.insert(v.end(), a.elems().begin(), a.elems().end());
  v.insert(v.end(), b.elems().begin(), b.elems().end());
  detail::sort_and_dedupe(v, policy.nabla_dedupe);
  return WValue(std::move(v));
}

/// Pairwise merge of every element of `a` with every element of `b`,
/// re-ranked decreasingly. Zero annihilates from either side.
inline WValue delta(const WValue& a, const WValue& b, const RefinedPolicy& policy = {}) {
  detail::require_same_scale(a, b);
  if (a.is_zero() || b.is_zero()) return WValue{};
  std::vector<IncreasingSeq> v;
  v.reserve(a.size() * b.size());
  std::vector<Level> buf;
  for (const auto& x : a.elems()) {
    for (const auto& y : b.elems()) {
      buf.assign(x.levels().begin(), x.levels().end());
      buf.insert(buf.end(), y.levels().begin(), y.levels().end());
      v.push_back(rank_increasing(buf));
    }
  }
  detail::sort_and_dedupe(v, policy.delta_dedupe);
  return WValue(std::move(v));
}

/// V ⊂ W: bottom is zero, any other level a is ((a)).
inline WValue embed_level(Level a) {
  if (a.is_bottom()) return WValue{};
  return WValue({IncreasingSeq({a})});
}

using RefinedLottery = Distribution<WValue>;
using RefinedCompound = Mixture<WValue>;
using RefinedBranch = MixtureBranch<WValue>;

inline RefinedLottery embed_lottery(const SimpleLottery& l) {
  RefinedLottery r;
  r.degrees.reserve(l.size());
  for (Level d : l.degrees) r.degrees.push_back(embed_level(d));
  return r;
}

/// Coefficients and simple sub-lotteries embedded degree-wise; consequence
/// leaves are kept.
inline RefinedCompound embed_compound(const CompoundLottery& c) {
  RefinedCompound out;
  for (const auto& b : c.branches) {
    RefinedBranch rb{embed_level(b.coefficient), Outcome{}};
    if (const auto* x = std::get_if<Outcome>(&b.child)) {
      rb.child = *x;
    } else if (const auto* d = std::get_if<SimpleLottery>(&b.child)) {
      rb.child = embed_lottery(*d);
    } else {
      rb.child = embed_compound(std::get<CompoundLottery>(b.child));
    }
    out.branches.push_back(std::move(rb));
  }
  return out;
}

/// The (W, nabla, delta) structure used to reduce refined compounds.
struct RefinedAlgebra {
  Level top;
  RefinedPolicy policy;

  WValue zero() const { return WValue{}; }
  WValue one() const { return embed_level(top); }
  WValue add(const WValue& a, const WValue& b) const { return nabla(a, b, policy); }
  WValue mul(const WValue& a, const WValue& b) const { return delta(a, b, policy); }
};

namespace detail {

inline void validate_w(const Scale& scale, const WValue& w) {
  for (const auto& s : w.elems()) scale.validate(s.front());
}

inline void validate_refined(const Scale& scale, const OutcomeSpace& space, const RefinedCompound& c) {
  for (const auto& b : c.branches) {
    validate_w(scale, b.coefficient);
    if (const auto* d = std::get_if<RefinedLottery>(&b.child)) {
      if (d->size() != space.size()) throw ScaleMismatch("refined sub-lottery does not cover the outcome space");
      for (const auto& w : d->degrees) validate_w(scale, w);
    }
    if (const auto* sub = std::get_if<RefinedCompound>(&b.child)) validate_refined(scale, space, *sub);
  }
}

}  // namespace detail

/// Collapses a refined compound bottom-up with
/// [a1/p1, ..., am/pm](x) = nabla_i (a_i delta p_i(x)).
inline RefinedLottery reduce_rr(const Scale& scale, const OutcomeSpace& space, const RefinedCompound& c,
                                const RefinedPolicy& policy = {}) {
  detail::validate_refined(scale, space, c);
  return detail::reduce_mixture(c, space.size(), RefinedAlgebra{scale.top(), policy});
}

inline RefinedLottery reduce_rr(const Scale& scale, const OutcomeSpace& space, const RefinedLottery& l,
                                const RefinedPolicy& = {}) {
  if (l.size() != space.size()) throw ScaleMismatch("refined lottery does not cover the outcome space");
  for (const auto& w : l.degrees) detail::validate_w(scale, w);
  return l;
}

/// A value <alpha, beta> of the refined binary scale.
struct RefinedBinaryUtility {
  WValue alpha;
  WValue beta;

  /// alpha_{1,1} ∨ beta_{1,1} = top.
  bool in_uw() const {
    auto a = alpha.first_level(), b = beta.first_level();
    return (a && a->is_top()) || (b && b->is_top());
  }

  friend bool operator==(const RefinedBinaryUtility&, const RefinedBinaryUtility&) = default;
};

/// Refined binary possibilistic utility: nabla over consequences of
/// l(x) delta u(x), with delta applied to both components of u(x).
inline RefinedBinaryUtility rpu(const RefinedLottery& l, const UtilityAssignment& u, const RefinedPolicy& policy = {}) {
  detail::require_total(l.size(), u.size());
  RefinedBinaryUtility acc;
  for (std::size_t i = 0; i < l.size(); ++i) {
    acc.alpha = nabla(acc.alpha, delta(l.degrees[i], embed_level(u[i].lam()), policy), policy);
    acc.beta = nabla(acc.beta, delta(l.degrees[i], embed_level(u[i].mu()), policy), policy);
  }
  return acc;
}

inline RefinedBinaryUtility rpu(const SimpleLottery& l, const UtilityAssignment& u, const RefinedPolicy& policy = {}) {
  return rpu(embed_lottery(l), u, policy);
}

namespace detail {

/// Compares the i-th elements; a missing element is the zero pad, below
/// every sequence.
inline Ordering cmp_at(const WValue& a, const WValue& b, std::size_t i) {
  const bool ha = i < a.size(), hb = i < b.size();
  if (!ha && !hb) return Ordering::Equal;
  if (!ha) return Ordering::Less;
  if (!hb) return Ordering::Greater;
  return lex_cmp(a.elems()[i], b.elems()[i]);
}

}  // namespace detail

/// Scans positions jointly over both components and decides at the first
/// position where either differs. Alpha is to be maximized, beta minimized.
inline Ordering cmp_uw(const RefinedBinaryUtility& a, const RefinedBinaryUtility& b, Attitude att) {
  detail::require_same_scale(a.alpha, b.alpha);
  detail::require_same_scale(a.beta, b.beta);
  const std::size_t n = std::max({a.alpha.size(), a.beta.size(), b.alpha.size(), b.beta.size()});
  for (std::size_t i = 0; i < n; ++i) {
    const Ordering ca = detail::cmp_at(a.alpha, b.alpha, i);
    const Ordering cb = reverse(detail::cmp_at(a.beta, b.beta, i));  // Greater: a's beta is smaller
    if (ca == Ordering::Equal && cb == Ordering::Equal) continue;
    switch (att) {
      case Attitude::Pessimistic: return cb != Ordering::Equal ? cb : ca;
      case Attitude::Optimistic: return ca != Ordering::Equal ? ca : cb;
      case Attitude::Neutral: {
        const bool better = (ca != Ordering::Less && cb == Ordering::Greater) ||
                            (ca == Ordering::Greater && cb != Ordering::Less);
        const bool worse = (ca != Ordering::Greater && cb == Ordering::Less) ||
                           (ca == Ordering::Less && cb != Ordering::Greater);
        if (better) return Ordering::Greater;
        if (worse) return Ordering::Less;
        return Ordering::Incomparable;
      }
    }
  }
  return Ordering::Equal;
}

inline Ordering compare_rpu(const RefinedLottery& a, const RefinedLottery& b, const UtilityAssignment& u,
                            Attitude att, const RefinedPolicy& policy = {}) {
  return cmp_uw(rpu(a, u, policy), rpu(b, u, policy), att);
}

}  // namespace qdm
