#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdm/error.hpp"
#include "qdm/lottery.hpp"
#include "qdm/scale.hpp"

namespace qdm {

enum class Ordering { Greater, Less, Equal, Incomparable };

constexpr Ordering reverse(Ordering o) {
  switch (o) {
    case Ordering::Greater: return Ordering::Less;
    case Ordering::Less: return Ordering::Greater;
    default: return o;
  }
}

constexpr std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Greater: return "Greater";
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Incomparable: return "Incomparable";
  }
  return "?";
}

inline Ordering compare_levels(Level a, Level b) {
  auto c = a <=> b;
  if (c > 0) return Ordering::Greater;
  if (c < 0) return Ordering::Less;
  return Ordering::Equal;
}

/// Which component takes priority when comparing two-component utilities.
enum class Attitude { Pessimistic, Optimistic, Neutral };

constexpr std::string_view to_string(Attitude a) {
  switch (a) {
    case Attitude::Pessimistic: return "pessimistic";
    case Attitude::Optimistic: return "optimistic";
    case Attitude::Neutral: return "neutral";
  }
  return "?";
}

inline std::optional<Attitude> parse_attitude(std::string_view s) {
  if (s == "pessimistic") return Attitude::Pessimistic;
  if (s == "optimistic") return Attitude::Optimistic;
  if (s == "neutral") return Attitude::Neutral;
  return std::nullopt;
}

inline constexpr Attitude kAllAttitudes[] = {Attitude::Pessimistic, Attitude::Optimistic, Attitude::Neutral};

enum class Criterion { PU, UOpt, UPess, LexPU, RPU };

constexpr std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::PU: return "pu";
    case Criterion::UOpt: return "uopt";
    case Criterion::UPess: return "upess";
    case Criterion::LexPU: return "lexpu";
    case Criterion::RPU: return "rpu";
  }
  return "?";
}

inline std::optional<Criterion> parse_criterion(std::string_view s) {
  if (s == "pu") return Criterion::PU;
  if (s == "uopt") return Criterion::UOpt;
  if (s == "upess") return Criterion::UPess;
  if (s == "lexpu") return Criterion::LexPU;
  if (s == "rpu") return Criterion::RPU;
  return std::nullopt;
}

/// Criteria valued in single levels use a level assignment v; the others a
/// binary assignment u.
constexpr bool uses_level_assignment(Criterion c) {
  return c == Criterion::UOpt || c == Criterion::UPess || c == Criterion::LexPU;
}

/// Criteria whose comparison depends on an attitude.
constexpr bool needs_attitude(Criterion c) { return c == Criterion::LexPU || c == Criterion::RPU; }

/// A pair <lam, mu> of the extended scale: possibility of the best and of the
/// worst consequence, with no constraint between them.
struct ExtendedBinaryUtility {
  Level lam;
  Level mu;

  friend bool operator==(const ExtendedBinaryUtility&, const ExtendedBinaryUtility&) = default;
};

/// A pair <lam, mu> with lam ∨ mu = top.
class BinaryUtility {
 public:
  BinaryUtility(Level lam, Level mu) : lam_(lam), mu_(mu) {
    if (!join(lam, mu).is_top()) {
      throw ConstraintViolation("binary utility <" + std::to_string(lam.index) + ", " +
                                std::to_string(mu.index) + "> has neither component at top");
    }
  }

  static std::optional<BinaryUtility> try_make(Level lam, Level mu) {
    if (!join(lam, mu).is_top()) return std::nullopt;
    return BinaryUtility(lam, mu);
  }

  Level lam() const { return lam_; }
  Level mu() const { return mu_; }

  operator ExtendedBinaryUtility() const { return {lam_, mu_}; }

  friend bool operator==(const BinaryUtility&, const BinaryUtility&) = default;

 private:
  Level lam_;
  Level mu_;
};

/// Basic assignments are indexed by consequence.
using UtilityAssignment = std::vector<BinaryUtility>;
using ExtendedAssignment = std::vector<ExtendedBinaryUtility>;
using LevelAssignment = std::vector<Level>;

/// Every pair of U_V, ordered from <1,0> down through <1,top-1>... <1,1> and
/// then <top-1,1> ... <0,1>.
inline std::vector<BinaryUtility> all_binary_utilities(const Scale& scale) {
  std::vector<BinaryUtility> out;
  for (std::size_t m = 0; m < scale.size(); ++m) out.emplace_back(scale.top(), scale.level(m));
  for (std::size_t l = scale.size() - 1; l-- > 0;) out.emplace_back(scale.level(l), scale.top());
  return out;
}

namespace detail {

template <class A>
void require_total(const OutcomeSpace& space, const A& a, std::string_view what) {
  if (a.size() != space.size()) {
    throw InvalidArgument(std::string(what) + " assigns " + std::to_string(a.size()) +
                          " consequences, outcome space has " + std::to_string(space.size()));
  }
}

inline void require_total(std::size_t lottery_size, std::size_t assignment_size) {
  if (lottery_size != assignment_size) {
    throw ScaleMismatch("lottery has " + std::to_string(lottery_size) + " degrees but the assignment covers " +
                        std::to_string(assignment_size) + " consequences");
  }
}

inline std::string describe(const SimpleLottery& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(l.degrees[i].index);
  }
  return s + ")";
}

}  // namespace detail

/// Warn-only sanity check: u(best) should be <1,0> and u(worst) <0,1>.
template <class U>
std::vector<std::string> check_assignment(const Scale& scale, const OutcomeSpace& space, const std::vector<U>& u) {
  detail::require_total(space, u, "assignment");
  std::vector<std::string> warnings;
  ExtendedBinaryUtility best = u[space.best().index], worst = u[space.worst().index];
  if (!(best.lam == scale.top() && best.mu == scale.bottom())) {
    warnings.push_back("u(" + space.name(space.best()) + ") is not <top, bottom>");
  }
  if (!(worst.lam == scale.bottom() && worst.mu == scale.top())) {
    warnings.push_back("u(" + space.name(space.worst()) + ") is not <bottom, top>");
  }
  return warnings;
}

inline std::vector<std::string> check_assignment(const Scale& scale, const OutcomeSpace& space,
                                                 const LevelAssignment& v) {
  detail::require_total(space, v, "assignment");
  std::vector<std::string> warnings;
  if (v[space.best().index] != scale.top()) warnings.push_back("v(" + space.name(space.best()) + ") is below top");
  if (v[space.worst().index] != scale.bottom()) {
    warnings.push_back("v(" + space.name(space.worst()) + ") is above bottom");
  }
  return warnings;
}

/// max_i (pi(x_i) ∧ u(x_i)) with the componentwise extensions of ∧ and ∨.
/// No normalization requirement, so the result may leave U_V.
template <class U>
ExtendedBinaryUtility pu_extended(const SimpleLottery& l, const std::vector<U>& u) {
  detail::require_total(l.size(), u.size());
  if (l.size() == 0) throw InvalidArgument("empty lottery");
  Level lam{0, l.degrees[0].top}, mu{0, l.degrees[0].top};
  for (std::size_t i = 0; i < l.size(); ++i) {
    ExtendedBinaryUtility ui = u[i];
    lam = join(lam, meet(l.degrees[i], ui.lam));
    mu = join(mu, meet(l.degrees[i], ui.mu));
  }
  return {lam, mu};
}

/// Binary possibilistic utility. Throws ConstraintViolation for a
/// non-normalized lottery; use pu_extended for those.
inline BinaryUtility pu(const SimpleLottery& l, const UtilityAssignment& u) {
  if (!is_normalized(l)) {
    throw ConstraintViolation("pu requires a normalized lottery, got degrees " + detail::describe(l));
  }
  auto e = pu_extended(l, u);
  return BinaryUtility(e.lam, e.mu);
}

/// <lam, mu> >= <lam', mu'> iff lam >= lam' and mu <= mu'.
inline Ordering cmp_uv(const BinaryUtility& a, const BinaryUtility& b) {
  if (a == b) return Ordering::Equal;
  const bool ge = a.lam() >= b.lam() && a.mu() <= b.mu();
  const bool le = b.lam() >= a.lam() && b.mu() <= a.mu();
  if (ge) return Ordering::Greater;
  if (le) return Ordering::Less;
  return Ordering::Incomparable;
}

namespace detail {

inline bool strictly_above(const ExtendedBinaryUtility& a, const ExtendedBinaryUtility& b, Attitude att) {
  switch (att) {
    case Attitude::Pessimistic: return a.mu < b.mu || (a.mu == b.mu && a.lam > b.lam);
    case Attitude::Optimistic: return a.lam > b.lam || (a.lam == b.lam && a.mu < b.mu);
    case Attitude::Neutral: return (a.lam > b.lam && a.mu <= b.mu) || (a.lam >= b.lam && a.mu < b.mu);
  }
  return false;
}

}  // namespace detail

/// Orders on the extended scale. Pessimistic and optimistic are lexicographic
/// (total); neutral is the componentwise partial order.
inline Ordering cmp_ext(const ExtendedBinaryUtility& a, const ExtendedBinaryUtility& b, Attitude att) {
  require_same_scale(a.lam, b.lam);
  require_same_scale(a.mu, b.mu);
  if (a == b) return Ordering::Equal;
  if (detail::strictly_above(a, b, att)) return Ordering::Greater;
  if (detail::strictly_above(b, a, att)) return Ordering::Less;
  return Ordering::Incomparable;
}

/// Optimistic utility: max_i (pi(x_i) ∧ v(x_i)).
inline Level u_opt(const SimpleLottery& l, const LevelAssignment& v) {
  detail::require_total(l.size(), v.size());
  if (l.size() == 0) throw InvalidArgument("empty lottery");
  Level acc{0, l.degrees[0].top};
  for (std::size_t i = 0; i < l.size(); ++i) acc = join(acc, meet(l.degrees[i], v[i]));
  return acc;
}

/// Pessimistic utility: min_i (n(pi(x_i)) ∨ v(x_i)). On the all-zero lottery
/// the value is top; a warning is recorded when `warnings` is given.
inline Level u_pess(const SimpleLottery& l, const LevelAssignment& v, Warnings* warnings = nullptr) {
  detail::require_total(l.size(), v.size());
  if (l.size() == 0) throw InvalidArgument("empty lottery");
  if (warnings && is_all_zero(l)) warnings->add("pessimistic utility of an all-zero lottery (defined as top)");
  Level acc{l.degrees[0].top, l.degrees[0].top};
  for (std::size_t i = 0; i < l.size(); ++i) acc = meet(acc, join(involution(l.degrees[i]), v[i]));
  return acc;
}

/// <U+(l), n(U-(l))>, meant to be compared with the pessimistic attitude.
inline ExtendedBinaryUtility lex_pu(const SimpleLottery& l, const LevelAssignment& v, Warnings* warnings = nullptr) {
  return {u_opt(l, v), involution(u_pess(l, v, warnings))};
}

// Lottery-level wrappers: preference is read off the criterion values.

inline Ordering compare_pu(const SimpleLottery& a, const SimpleLottery& b, const UtilityAssignment& u) {
  return cmp_uv(pu(a, u), pu(b, u));
}

inline Ordering compare_uopt(const SimpleLottery& a, const SimpleLottery& b, const LevelAssignment& v) {
  return compare_levels(u_opt(a, v), u_opt(b, v));
}

inline Ordering compare_upess(const SimpleLottery& a, const SimpleLottery& b, const LevelAssignment& v) {
  return compare_levels(u_pess(a, v), u_pess(b, v));
}

inline Ordering compare_lexpu(const SimpleLottery& a, const SimpleLottery& b, const LevelAssignment& v,
                              Attitude att) {
  return cmp_ext(lex_pu(a, v), lex_pu(b, v), att);
}

}  // namespace qdm
