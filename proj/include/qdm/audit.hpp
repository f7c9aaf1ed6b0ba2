#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdm/criteria.hpp"
#include "qdm/enumerate.hpp"
#include "qdm/error.hpp"
#include "qdm/format.hpp"
#include "qdm/lottery.hpp"
#include "qdm/refined.hpp"
#include "qdm/scale.hpp"

// Exhaustive verification of axioms and derived identities on small finite
// instances. Preference between lotteries is always derived from criterion
// values through the comparators in `Comparators`; each check evaluates the
// axiom's predicate against that derived relation.

namespace qdm {

enum class Check {
  B1, B2, B3, B4,
  C1, C2, C3, C4,
  Lemma1,
  D2Pess, D2Opt, D2Neutral, D4, D4r,
  A1, A2Pess, A2Opt, A2Neutral, A3,
  Refinement,
  Bridges,
};

inline constexpr Check kAllChecks[] = {
    Check::B1, Check::B2, Check::B3, Check::B4, Check::C1, Check::C2, Check::C3,
    Check::C4, Check::Lemma1, Check::D2Pess, Check::D2Opt, Check::D2Neutral, Check::D4, Check::D4r,
    Check::A1, Check::A2Pess, Check::A2Opt, Check::A2Neutral, Check::A3, Check::Refinement, Check::Bridges,
};

constexpr std::string_view to_string(Check c) {
  switch (c) {
    case Check::B1: return "B1";
    case Check::B2: return "B2";
    case Check::B3: return "B3";
    case Check::B4: return "B4";
    case Check::C1: return "C1";
    case Check::C2: return "C2";
    case Check::C3: return "C3";
    case Check::C4: return "C4";
    case Check::Lemma1: return "lemma1";
    case Check::D2Pess: return "D2-";
    case Check::D2Opt: return "D2+";
    case Check::D2Neutral: return "D2=";
    case Check::D4: return "D4";
    case Check::D4r: return "D4r";
    case Check::A1: return "A1";
    case Check::A2Pess: return "A2-";
    case Check::A2Opt: return "A2+";
    case Check::A2Neutral: return "A2=";
    case Check::A3: return "A3";
    case Check::Refinement: return "refinement";
    case Check::Bridges: return "bridges";
  }
  return "?";
}

/// Case-insensitive.
inline std::optional<Check> parse_check(std::string_view s) {
  auto lower = [](std::string_view v) {
    std::string o(v);
    for (auto& ch : o) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return o;
  };
  const std::string key = lower(s);
  for (Check c : kAllChecks) {
    if (lower(to_string(c)) == key) return c;
  }
  return std::nullopt;
}

/// Criteria whose induced relation a check is about.
inline bool applicable(Check c, Criterion crit) {
  switch (c) {
    case Check::B1: case Check::B2: case Check::B3: case Check::B4:
    case Check::C1: case Check::C2: case Check::C3: case Check::C4:
    case Check::Lemma1:
      return crit == Criterion::PU;
    case Check::D2Pess: case Check::D2Opt: case Check::D2Neutral: case Check::D4:
      return crit == Criterion::PU || crit == Criterion::LexPU;
    case Check::D4r:
      return crit == Criterion::LexPU;
    case Check::A1: case Check::A2Pess: case Check::A2Opt: case Check::A2Neutral: case Check::A3:
    case Check::Refinement:
      return crit == Criterion::RPU;
    case Check::Bridges:
      return crit != Criterion::RPU;
  }
  return false;
}

/// Checks that build two-branch mixtures of simple lotteries.
constexpr bool needs_mixtures(Check c) {
  return c == Check::B3 || c == Check::C3 || c == Check::C4 || c == Check::A3;
}

struct AuditSpec {
  Scale scale;
  OutcomeSpace space;
  /// Nesting of the lotteries examined: 1 = simple lotteries only, 2 = also
  /// two-branch mixtures of simple lotteries.
  std::size_t max_depth = 2;
  std::optional<Criterion> criterion;
  /// Restricts attitude-dependent checks (A1, refinement) to one attitude.
  std::optional<Attitude> attitude;
  /// A fixed U_V assignment; otherwise every assignment with u(best) = <1,0>,
  /// u(worst) = <0,1> and arbitrary values elsewhere.
  std::optional<UtilityAssignment> assignment;
  /// A fixed level assignment; otherwise bridges use every v and D4r every v
  /// with v(best) = top and v(worst) = bottom.
  std::optional<LevelAssignment> level_assignment;
  /// Empty = every check applicable to `criterion` (or every check).
  std::vector<Check> checks;
  std::uint64_t budget = 50'000'000;
  RefinedPolicy policy;
  /// Permutes the enumeration order; verdicts must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
  /// Cap on witnesses stored per existential check (the count is exact).
  std::size_t witness_limit = 64;

  AuditSpec(Scale s, OutcomeSpace x) : scale(std::move(s)), space(std::move(x)) {}

  static AuditSpec of_size(std::size_t consequences, std::size_t levels) {
    return AuditSpec(Scale::uniform(levels), OutcomeSpace::numbered(consequences));
  }
};

struct Counterexample {
  std::string summary;
  /// role -> rendered text, in report order.
  std::vector<std::pair<std::string, std::string>> items;
  // Replayable inputs.
  std::vector<SimpleLottery> lotteries;
  std::vector<RefinedLottery> refined_lotteries;
  std::vector<Level> coefficients;
  std::optional<UtilityAssignment> assignment;
  std::optional<LevelAssignment> level_assignment;
};

struct Witness {
  std::string instance;
  std::string witness;
};

struct CheckReport {
  Check check = Check::B1;
  bool passed = true;
  std::uint64_t instances = 0;
  std::optional<Counterexample> counterexample;
  std::uint64_t witness_count = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> warnings;
  double elapsed_ms = 0;
};

struct AuditReport {
  std::vector<CheckReport> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed; });
  }
};

/// Comparators the audit derives preference from. Replaceable so the harness
/// itself can be mutation-tested.
struct Comparators {
  std::function<Ordering(const BinaryUtility&, const BinaryUtility&)> uv = cmp_uv;
  std::function<Ordering(const ExtendedBinaryUtility&, const ExtendedBinaryUtility&, Attitude)> ext = cmp_ext;
  std::function<Ordering(const RefinedBinaryUtility&, const RefinedBinaryUtility&, Attitude)> uw = cmp_uw;
};

namespace detail {

inline bool at_least(Ordering o) { return o == Ordering::Greater || o == Ordering::Equal; }

inline Attitude attitude_of(Check c) {
  switch (c) {
    case Check::D2Opt: case Check::A2Opt: return Attitude::Optimistic;
    case Check::D2Neutral: case Check::A2Neutral: return Attitude::Neutral;
    default: return Attitude::Pessimistic;
  }
}

/// The D2 clause for <lam,mu> strictly above <lam2,mu2>, written directly
/// from the axiom statement.
inline bool d2_strict(Attitude att, Level lam, Level mu, Level lam2, Level mu2) {
  const auto l = lam.index, m = mu.index, l2 = lam2.index, m2 = mu2.index;
  switch (att) {
    case Attitude::Pessimistic: return m < m2 || (m == m2 && l > l2);
    case Attitude::Optimistic: return l > l2 || (l == l2 && m < m2);
    case Attitude::Neutral: return (l > l2 && m <= m2) || (l >= l2 && m < m2);
  }
  return false;
}

/// Lexicographic comparison of increasing sequences with top padding,
/// written independently of lex_cmp. Negative, zero or positive.
inline int seq_order(const std::vector<Level>* a, const std::vector<Level>* b, std::uint16_t top) {
  if (!a && !b) return 0;
  if (!a) return -1;  // zero pad
  if (!b) return 1;
  for (std::size_t i = 0; i < std::max(a->size(), b->size()); ++i) {
    const int x = i < a->size() ? (*a)[i].index : top;
    const int y = i < b->size() ? (*b)[i].index : top;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

inline const std::vector<Level>* elem(const WValue& w, std::size_t i) {
  return i < w.size() ? &w.elems()[i].levels() : nullptr;
}

/// The A2 clause for [alpha/best, beta/worst] strictly above
/// [alpha2/best, beta2/worst]: exists i where the attitude's condition holds
/// and all earlier positions agree in both components.
inline bool a2_strict(Attitude att, const WValue& alpha, const WValue& beta, const WValue& alpha2,
                      const WValue& beta2, std::uint16_t top) {
  const std::size_t n = std::max({alpha.size(), beta.size(), alpha2.size(), beta2.size()});
  for (std::size_t i = 0; i < n; ++i) {
    const int a = seq_order(elem(alpha, i), elem(alpha2, i), top);
    const int b = seq_order(elem(beta, i), elem(beta2, i), top);
    bool holds = false;
    switch (att) {
      case Attitude::Pessimistic: holds = b < 0 || (b == 0 && a > 0); break;
      case Attitude::Optimistic: holds = a > 0 || (a == 0 && b < 0); break;
      case Attitude::Neutral: holds = (a >= 0 && b < 0) || (a > 0 && b <= 0); break;
    }
    if (holds) return true;
    if (a != 0 || b != 0) return false;  // guard for later positions fails
  }
  return false;
}

}  // namespace detail

class Auditor {
 public:
  explicit Auditor(AuditSpec spec, Comparators cmp = {}) : spec_(std::move(spec)), cmp_(std::move(cmp)) {
    if (spec_.max_depth < 1 || spec_.max_depth > 2) {
      throw InvalidArgument("max_depth must be 1 or 2, got " + std::to_string(spec_.max_depth));
    }
    if (spec_.assignment) {
      detail::require_total(spec_.space, *spec_.assignment, "assignment");
      assignments_.push_back(*spec_.assignment);
    } else {
      assignments_ = anchored_assignments();
    }
    if (spec_.level_assignment) detail::require_total(spec_.space, *spec_.level_assignment, "level assignment");
  }

  /// The checks `run()` executes.
  std::vector<Check> selected_checks() const {
    std::vector<Check> out;
    if (!spec_.checks.empty()) {
      out = spec_.checks;
    } else {
      for (Check c : kAllChecks) {
        if (spec_.criterion && !applicable(c, *spec_.criterion)) continue;
        if (spec_.max_depth < 2 && needs_mixtures(c)) continue;
        out.push_back(c);
      }
    }
    for (Check c : out) {
      if (spec_.criterion && !applicable(c, *spec_.criterion)) {
        throw InvalidArgument("check " + std::string(to_string(c)) + " is not applicable to criterion " +
                              std::string(to_string(*spec_.criterion)));
      }
      if (spec_.max_depth < 2 && needs_mixtures(c)) {
        throw InvalidArgument("check " + std::string(to_string(c)) + " needs max_depth >= 2");
      }
    }
    return out;
  }

  /// Work estimate used for the budget guard.
  std::uint64_t estimate(Check c) const {
    using detail::sat_mul;
    const std::uint64_t n = spec_.space.size(), L = spec_.scale.size(), U = 2 * L - 1;
    const std::uint64_t N = normalized_lottery_count(n, L), A = assignments_.size();
    switch (c) {
      case Check::B1: case Check::C1: return sat_mul(A, N + U * U * U);
      case Check::B2: case Check::C2: case Check::Lemma1: return sat_mul(A, U * U);
      case Check::B4: return sat_mul(A, n * U);
      case Check::B3: case Check::C3: case Check::A3: return sat_mul(A, sat_mul(sat_mul(N, N), sat_mul(U, N)));
      case Check::C4: return sat_mul(A, sat_mul(sat_mul(N, N), sat_mul(N, U)));
      case Check::D2Pess: case Check::D2Opt: case Check::D2Neutral: return sat_mul(A, U * U + L * L * L * L);
      case Check::D4: return sat_mul(A, n * L * L);
      case Check::D4r: return sat_mul(level_assignments(true).size(), n * L);
      case Check::A1: return sat_mul(A, sat_mul(sat_mul(N, N), N));
      case Check::A2Pess: case Check::A2Opt: case Check::A2Neutral: {
        const std::uint64_t w = refined_canonical_domain().size();
        return sat_mul(w, w);
      }
      case Check::Refinement: return sat_mul(A, sat_mul(N, N) + N * 2 * L);
      case Check::Bridges: return sat_mul(lottery_count(n, L), lottery_count(n, L));
    }
    return 0;
  }

  AuditReport run() {
    const auto checks = selected_checks();
    for (Check c : checks) {
      if (estimate(c) > spec_.budget) {
        throw BudgetExceeded("check " + std::string(to_string(c)) + " needs about " + std::to_string(estimate(c)) +
                             " evaluations, budget is " + std::to_string(spec_.budget));
      }
    }
    AuditReport report;
    for (Check c : checks) report.checks.push_back(run_one(c));
    return report;
  }

  CheckReport run_one(Check c) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport r;
    r.check = c;
    switch (c) {
      case Check::B1: preorder(r, false); break;
      case Check::C1: preorder(r, true); break;
      case Check::B2: canonical_pairs(r, c); break;
      case Check::C2: canonical_pairs(r, c); break;
      case Check::Lemma1: canonical_pairs(r, c); break;
      case Check::B3: substitutability(r); break;
      case Check::C3: weak_independence(r); break;
      case Check::C4: continuity(r); break;
      case Check::B4: commensurability(r); break;
      case Check::D2Pess: case Check::D2Opt: case Check::D2Neutral: extended_monotonicity(r, detail::attitude_of(c)); break;
      case Check::D4: generalized_continuity(r); break;
      case Check::D4r: restricted_continuity(r); break;
      case Check::A1: refined_preorder(r); break;
      case Check::A2Pess: case Check::A2Opt: case Check::A2Neutral: refined_monotonicity(r, detail::attitude_of(c)); break;
      case Check::A3: refined_substitutability(r); break;
      case Check::Refinement: refinement(r); break;
      case Check::Bridges: bridges(r); break;
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  const AuditSpec& spec() const { return spec_; }
  const std::vector<UtilityAssignment>& assignments() const { return assignments_; }

  /// u(best) = <1,0>, u(worst) = <0,1>, every U_V value elsewhere.
  std::vector<UtilityAssignment> anchored_assignments() const {
    const auto& s = spec_.scale;
    const auto values = all_binary_utilities(s);
    const std::size_t n = spec_.space.size();
    std::vector<UtilityAssignment> out;
    UtilityAssignment u(n, BinaryUtility(s.top(), s.bottom()));
    u.back() = BinaryUtility(s.bottom(), s.top());
    std::vector<std::size_t> digit(n, 0);
    while (true) {
      for (std::size_t i = 1; i + 1 < n; ++i) u[i] = values[digit[i]];
      out.push_back(u);
      std::size_t i = 1;
      for (; i + 1 < n; ++i) {
        if (++digit[i] < values.size()) break;
        digit[i] = 0;
      }
      if (i + 1 >= n) break;
    }
    return out;
  }

  /// Every level assignment, or (anchored) those with v(best) = top and
  /// v(worst) = bottom.
  std::vector<LevelAssignment> level_assignments(bool anchored) const {
    if (spec_.level_assignment) return {*spec_.level_assignment};
    const auto& s = spec_.scale;
    const std::size_t n = spec_.space.size();
    std::vector<LevelAssignment> out;
    for_each_lottery(s, spec_.space, false, spec_.budget, [&](const SimpleLottery& l) {
      if (anchored && (!l.degrees.front().is_top() || !l.degrees.back().is_bottom())) return;
      out.push_back(l.degrees);
    });
    (void)n;
    return out;
  }

  /// Refined canonical lotteries [alpha/best, beta/worst] whose components are
  /// strictly decreasing W values of at most two elements, each a sequence of
  /// at most two positive levels, with alpha_{1,1} ∨ beta_{1,1} = top.
  std::vector<std::pair<WValue, WValue>> refined_canonical_domain() const {
    const auto& s = spec_.scale;
    std::vector<IncreasingSeq> seqs;
    for (std::size_t a = 1; a < s.size(); ++a) {
      seqs.push_back(IncreasingSeq({s.level(a)}));
      for (std::size_t b = a + 1; b < s.size(); ++b) seqs.push_back(IncreasingSeq({s.level(a), s.level(b)}));
    }
    std::vector<WValue> ws{WValue{}};
    for (const auto& x : seqs) ws.push_back(WValue({x}));
    for (const auto& x : seqs) {
      for (const auto& y : seqs) {
        if (lex_cmp(x, y) == Ordering::Greater) ws.push_back(WValue({x, y}));
      }
    }
    std::vector<std::pair<WValue, WValue>> out;
    for (const auto& a : ws) {
      for (const auto& b : ws) {
        RefinedBinaryUtility probe{a, b};
        if (probe.in_uw()) out.emplace_back(a, b);
      }
    }
    return out;
  }

 private:
  // ---- helpers -------------------------------------------------------------

  std::vector<SimpleLottery> lotteries(bool normalized_only) const {
    auto v = all_lotteries(spec_.scale, spec_.space, normalized_only, spec_.budget);
    if (spec_.shuffle_seed) {
      std::mt19937_64 rng(*spec_.shuffle_seed);
      std::shuffle(v.begin(), v.end(), rng);
    }
    return v;
  }

  std::vector<BinaryUtility> uv_values() const {
    auto v = all_binary_utilities(spec_.scale);
    if (spec_.shuffle_seed) {
      std::mt19937_64 rng(*spec_.shuffle_seed + 1);
      std::shuffle(v.begin(), v.end(), rng);
    }
    return v;
  }

  std::string show(const SimpleLottery& l) const { return render(spec_.scale, spec_.space, l); }
  std::string show(const RefinedLottery& l) const { return render(spec_.scale, spec_.space, l); }
  template <class T>
  std::string show(const T& v) const {
    return render(spec_.scale, v);
  }

  std::string show_assignment(const UtilityAssignment& u) const {
    std::string out = "{";
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i) out += ", ";
      out += spec_.space.name(Outcome{i}) + ": " + show(u[i]);
    }
    return out + "}";
  }

  std::string show_assignment(const LevelAssignment& v) const {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += spec_.space.name(Outcome{i}) + ": " + show(v[i]);
    }
    return out + "}";
  }

  std::string show_mix(Level lam, const std::string& a, Level mu, const std::string& b) const {
    return "[" + show(lam) + "/" + a + ", " + show(mu) + "/" + b + "]";
  }

  void fail(CheckReport& r, Counterexample cx) const {
    r.passed = false;
    if (!r.counterexample) r.counterexample = std::move(cx);
  }

  void add_witness(CheckReport& r, std::string instance, std::string witness) const {
    ++r.witness_count;
    if (r.witnesses.size() < spec_.witness_limit) r.witnesses.push_back({std::move(instance), std::move(witness)});
  }

  BinaryUtility pu_of(const SimpleLottery& l, const UtilityAssignment& u) const { return pu(l, u); }

  /// Normalized coefficient pairs (lam ∨ mu = top), in canonical order.
  std::vector<BinaryUtility> coefficient_pairs() const { return uv_values(); }

  // ---- PU: orders ----------------------------------------------------------

  void preorder(CheckReport& r, bool complete) {
    const auto ls = lotteries(true);
    for (const auto& u : assignments_) {
      // The relation depends only on PU values; check it over distinct values
      // keeping one representative lottery for each.
      std::vector<std::pair<BinaryUtility, const SimpleLottery*>> reps;
      for (const auto& l : ls) {
        const auto v = pu_of(l, u);
        ++r.instances;
        if (cmp_.uv(v, v) != Ordering::Equal) {
          fail(r, cx1("not reflexive", {"lottery"}, {&l}, {v}, u));
          return;
        }
        if (std::none_of(reps.begin(), reps.end(), [&](const auto& p) { return p.first == v; })) reps.emplace_back(v, &l);
      }
      for (const auto& [a, la] : reps) {
        for (const auto& [b, lb] : reps) {
          const Ordering ab = cmp_.uv(a, b);
          if (ab != reverse(cmp_.uv(b, a))) {
            fail(r, cx1("comparison not antisymmetric", {"first", "second"}, {la, lb}, {a, b}, u));
            return;
          }
          if (complete && ab == Ordering::Incomparable) {
            fail(r, cx1("not complete", {"first", "second"}, {la, lb}, {a, b}, u));
            return;
          }
          if (!detail::at_least(ab)) continue;
          for (const auto& [c, lc] : reps) {
            ++r.instances;
            if (detail::at_least(cmp_.uv(b, c)) && !detail::at_least(cmp_.uv(a, c))) {
              fail(r, cx1("not transitive", {"first", "second", "third"}, {la, lb, lc}, {a, b, c}, u));
              return;
            }
          }
        }
      }
    }
  }

  // ---- PU: canonical lotteries --------------------------------------------

  void canonical_pairs(CheckReport& r, Check which) {
    const auto& s = spec_.scale;
    const auto values = uv_values();
    for (const auto& u : assignments_) {
      for (const auto& p : values) {
        const auto cp = canonical(s, spec_.space, p.lam(), p.mu());
        const auto vp = pu_of(cp, u);
        for (const auto& q : values) {
          const auto cq = canonical(s, spec_.space, q.lam(), q.mu());
          const auto vq = pu_of(cq, u);
          const Ordering o = cmp_.uv(vp, vq);
          const bool componentwise = p.lam() >= q.lam() && p.mu() <= q.mu();
          ++r.instances;
          bool ok = true;
          std::string why;
          switch (which) {
            case Check::B2:
              ok = detail::at_least(o) == componentwise;
              why = "preference between canonical lotteries disagrees with the componentwise rule";
              break;
            case Check::C2:
              ok = o != Ordering::Equal || (p == q);
              why = "distinct canonical lotteries are indifferent";
              break;
            default:
              ok = !componentwise || detail::at_least(o);
              why = "componentwise dominance without preference";
              break;
          }
          if (!ok) {
            fail(r, cx1(why, {"first", "second"}, {&cp, &cq}, {vp, vq}, u, "verdict", std::string(to_string(o))));
            return;
          }
        }
      }
    }
  }

  // ---- PU: mixtures ----------------------------------------------------------

  void substitutability(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto ls = lotteries(true);
    const auto coefs = coefficient_pairs();
    for (const auto& u : assignments_) {
      std::vector<BinaryUtility> vals;
      for (const auto& l : ls) vals.push_back(pu_of(l, u));
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (std::size_t j = 0; j < ls.size(); ++j) {
          if (i == j || cmp_.uv(vals[i], vals[j]) != Ordering::Equal) continue;
          for (const auto& c : coefs) {
            for (const auto& ctx : ls) {
              ++r.instances;
              const auto m1 = reduce_r(s, spec_.space, mix(c.lam(), ls[i], c.mu(), ctx));
              const auto m2 = reduce_r(s, spec_.space, mix(c.lam(), ls[j], c.mu(), ctx));
              const auto v1 = pu_of(m1, u), v2 = pu_of(m2, u);
              if (cmp_.uv(v1, v2) != Ordering::Equal) {
                fail(r, cx_mix("indifferent sub-lotteries give non-indifferent mixtures", ls[i], ls[j], ctx, c, v1, v2, u));
                return;
              }
            }
          }
        }
      }
    }
  }

  void weak_independence(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto ls = lotteries(true);
    const auto coefs = coefficient_pairs();
    for (const auto& u : assignments_) {
      std::vector<BinaryUtility> vals;
      for (const auto& l : ls) vals.push_back(pu_of(l, u));
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (std::size_t j = 0; j < ls.size(); ++j) {
          if (!detail::at_least(cmp_.uv(vals[i], vals[j]))) continue;
          for (const auto& c : coefs) {
            for (const auto& ctx : ls) {
              ++r.instances;
              const auto v1 = pu_of(reduce_r(s, spec_.space, mix(c.lam(), ls[i], c.mu(), ctx)), u);
              const auto v2 = pu_of(reduce_r(s, spec_.space, mix(c.lam(), ls[j], c.mu(), ctx)), u);
              if (!detail::at_least(cmp_.uv(v1, v2))) {
                fail(r, cx_mix("preferred sub-lottery gives a worse mixture", ls[i], ls[j], ctx, c, v1, v2, u));
                return;
              }
            }
          }
        }
      }
    }
  }

  void continuity(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto ls = lotteries(true);
    const auto coefs = all_binary_utilities(s);  // witness search order is fixed
    for (const auto& u : assignments_) {
      std::vector<BinaryUtility> vals;
      for (const auto& l : ls) vals.push_back(pu_of(l, u));
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (std::size_t j = 0; j < ls.size(); ++j) {
          if (cmp_.uv(vals[i], vals[j]) != Ordering::Greater) continue;
          for (std::size_t k = 0; k < ls.size(); ++k) {
            if (cmp_.uv(vals[j], vals[k]) != Ordering::Greater) continue;
            ++r.instances;
            std::optional<BinaryUtility> found;
            for (const auto& c : coefs) {
              const auto v = pu_of(reduce_r(s, spec_.space, mix(c.lam(), ls[i], c.mu(), ls[k])), u);
              if (cmp_.uv(v, vals[j]) == Ordering::Equal) {
                found = c;
                break;
              }
            }
            if (!found) {
              Counterexample cx;
              cx.summary = "no mixture of the outer lotteries is indifferent to the middle one";
              cx.items = {{"first", show(ls[i])}, {"second", show(ls[j])}, {"third", show(ls[k])},
                          {"pu(first)", show(vals[i])}, {"pu(second)", show(vals[j])}, {"pu(third)", show(vals[k])},
                          {"assignment", show_assignment(u)}};
              cx.lotteries = {ls[i], ls[j], ls[k]};
              cx.assignment = u;
              fail(r, std::move(cx));
              return;
            }
            add_witness(r, show(ls[i]) + " > " + show(ls[j]) + " > " + show(ls[k]),
                        show_mix(found->lam(), show(ls[i]), found->mu(), show(ls[k])));
          }
        }
      }
    }
  }

  void commensurability(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto values = all_binary_utilities(s);
    for (const auto& u : assignments_) {
      for (std::size_t x = 0; x < spec_.space.size(); ++x) {
        ++r.instances;
        const auto dx = degenerate(s, spec_.space, Outcome{x});
        const auto vx = pu_of(dx, u);
        std::optional<BinaryUtility> found;
        for (const auto& c : values) {
          if (cmp_.uv(vx, pu_of(canonical(s, spec_.space, c.lam(), c.mu()), u)) == Ordering::Equal) {
            found = c;
            break;
          }
        }
        if (!found) {
          fail(r, cx1("no canonical lottery is indifferent to the consequence", {"consequence"}, {&dx}, {vx}, u));
          return;
        }
        add_witness(r, spec_.space.name(Outcome{x}), show(canonical(s, spec_.space, found->lam(), found->mu())));
      }
    }
  }

  // ---- extended scale ------------------------------------------------------

  void extended_monotonicity(CheckReport& r, Attitude att) {
    const auto& s = spec_.scale;
    const auto values = uv_values();
    // The order on the extended scale restricted to U_V agrees with the U_V order.
    for (const auto& a : values) {
      for (const auto& b : values) {
        ++r.instances;
        const Ordering uv = cmp_.uv(a, b), ext = cmp_.ext(a, b, att);
        if (uv != ext) {
          Counterexample cx;
          cx.summary = "extended order disagrees with the U_V order on U_V";
          cx.items = {{"first", show(a)}, {"second", show(b)}, {"U_V order", std::string(to_string(uv))},
                      {std::string(to_string(att)), std::string(to_string(ext))}};
          fail(r, std::move(cx));
          return;
        }
      }
    }
    // Preference among (possibly non-normalized) canonical lotteries matches
    // the axiom's clause.
    const auto levels = s.levels();
    for (const auto& u : assignments_) {
      const ExtendedAssignment ue(u.begin(), u.end());
      for (Level l1 : levels) {
        for (Level m1 : levels) {
          const auto c1 = canonical(s, spec_.space, l1, m1);
          const auto v1 = pu_extended(c1, ue);
          for (Level l2 : levels) {
            for (Level m2 : levels) {
              ++r.instances;
              const auto c2 = canonical(s, spec_.space, l2, m2);
              const auto v2 = pu_extended(c2, ue);
              const bool strict = cmp_.ext(v1, v2, att) == Ordering::Greater;
              if (strict != detail::d2_strict(att, l1, m1, l2, m2)) {
                Counterexample cx;
                cx.summary = "strict preference between canonical lotteries disagrees with the axiom clause";
                cx.items = {{"first", show(c1)}, {"second", show(c2)}, {"value(first)", show(v1)},
                            {"value(second)", show(v2)}, {"assignment", show_assignment(u)}};
                cx.lotteries = {c1, c2};
                cx.assignment = u;
                fail(r, std::move(cx));
                return;
              }
            }
          }
        }
      }
    }
  }

  void generalized_continuity(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto levels = s.levels();
    for (const auto& u : assignments_) {
      const ExtendedAssignment ue(u.begin(), u.end());
      for (std::size_t x = 0; x < spec_.space.size(); ++x) {
        ++r.instances;
        const auto dx = degenerate(s, spec_.space, Outcome{x});
        const auto vx = pu_extended(dx, ue);
        std::optional<std::pair<Level, Level>> found;
        for (Level l : levels) {
          for (Level m : levels) {
            if (!found && cmp_.ext(vx, pu_extended(canonical(s, spec_.space, l, m), ue), Attitude::Pessimistic) ==
                              Ordering::Equal) {
              found = std::make_pair(l, m);
            }
          }
        }
        if (!found) {
          Counterexample cx;
          cx.summary = "no canonical lottery is indifferent to the consequence";
          cx.items = {{"consequence", spec_.space.name(Outcome{x})}, {"value", show(vx)}, {"assignment", show_assignment(u)}};
          cx.lotteries = {dx};
          cx.assignment = u;
          fail(r, std::move(cx));
          return;
        }
        add_witness(r, spec_.space.name(Outcome{x}), show(canonical(s, spec_.space, found->first, found->second)));
      }
    }
  }

  void restricted_continuity(CheckReport& r) {
    const auto& s = spec_.scale;
    const Attitude att = spec_.attitude.value_or(Attitude::Pessimistic);
    for (const auto& v : level_assignments(true)) {
      for (std::size_t x = 0; x < spec_.space.size(); ++x) {
        ++r.instances;
        const auto dx = degenerate(s, spec_.space, Outcome{x});
        const auto vx = lex_pu(dx, v);
        std::optional<Level> found;
        for (Level l : s.levels()) {
          if (cmp_.ext(vx, lex_pu(canonical(s, spec_.space, l, involution(l)), v), att) == Ordering::Equal) {
            found = l;
            break;
          }
        }
        if (!found) {
          Counterexample cx;
          cx.summary = "no lottery [l/best, n(l)/worst] is indifferent to the consequence";
          cx.items = {{"consequence", spec_.space.name(Outcome{x})}, {"value", show(vx)}, {"assignment", show_assignment(v)}};
          cx.lotteries = {dx};
          cx.level_assignment = v;
          fail(r, std::move(cx));
          return;
        }
        add_witness(r, spec_.space.name(Outcome{x}), show(canonical(s, spec_.space, *found, involution(*found))));
      }
    }
  }

  void bridges(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto all = lotteries(false);
    std::size_t warned = 0;
    const auto vs = level_assignments(false);
    for (const auto& v : vs) {
      if (v.front() != s.top()) ++warned;
      UtilityAssignment pess, opt;
      ExtendedAssignment both;
      for (Level a : v) {
        pess.emplace_back(s.top(), involution(a));
        opt.emplace_back(a, s.top());
        both.push_back({a, involution(a)});
      }
      for (const auto& l : all) {
        ++r.instances;
        const Level up = u_opt(l, v), down = u_pess(l, v);
        std::string broken;
        std::string lhs, rhs;
        if (is_normalized(l)) {
          const auto p1 = pu(l, pess);
          if (!(p1.lam() == s.top() && p1.mu() == involution(down))) {
            broken = "pu = <1, n(U-)>";
            lhs = show(p1);
            rhs = show(ExtendedBinaryUtility{s.top(), involution(down)});
          }
          const auto p2 = pu(l, opt);
          if (broken.empty() && !(p2.lam() == up && p2.mu() == s.top())) {
            broken = "pu = <U+, 1>";
            lhs = show(p2);
            rhs = show(ExtendedBinaryUtility{up, s.top()});
          }
        }
        const auto p3 = pu_extended(l, both);
        if (broken.empty() && !(p3 == ExtendedBinaryUtility{up, involution(down)})) {
          broken = "pu_extended = <U+, n(U-)>";
          lhs = show(p3);
          rhs = show(ExtendedBinaryUtility{up, involution(down)});
        }
        if (!broken.empty()) {
          Counterexample cx;
          cx.summary = "identity " + broken + " fails";
          cx.items = {{"lottery", show(l)}, {"left", lhs}, {"right", rhs}, {"assignment", show_assignment(v)}};
          cx.lotteries = {l};
          cx.level_assignment = v;
          fail(r, std::move(cx));
          return;
        }
      }
    }
    if (warned) {
      r.warnings.push_back(std::to_string(warned) + " of " + std::to_string(vs.size()) + " level assignments have v(" +
                           spec_.space.name(spec_.space.best()) + ") below top (warn-only)");
    }
  }

  // ---- refined -------------------------------------------------------------

  std::vector<Attitude> attitudes() const {
    if (spec_.attitude) return {*spec_.attitude};
    return {std::begin(kAllAttitudes), std::end(kAllAttitudes)};
  }

  void refined_preorder(CheckReport& r) {
    const auto ls = lotteries(true);
    for (const auto& u : assignments_) {
      std::vector<std::pair<RefinedBinaryUtility, const SimpleLottery*>> reps;
      for (const auto& l : ls) {
        auto v = rpu(l, u, spec_.policy);
        if (std::none_of(reps.begin(), reps.end(), [&](const auto& p) { return p.first == v; })) reps.emplace_back(std::move(v), &l);
      }
      for (Attitude att : attitudes()) {
        const std::string tag = " (" + std::string(to_string(att)) + ")";
        for (const auto& [a, la] : reps) {
          ++r.instances;
          if (cmp_.uw(a, a, att) != Ordering::Equal) {
            fail(r, cx_refined("not reflexive" + tag, {la}, {a}, u));
            return;
          }
          for (const auto& [b, lb] : reps) {
            const Ordering ab = cmp_.uw(a, b, att);
            if (ab != reverse(cmp_.uw(b, a, att))) {
              fail(r, cx_refined("comparison not antisymmetric" + tag, {la, lb}, {a, b}, u));
              return;
            }
            if (!detail::at_least(ab)) continue;
            for (const auto& [c, lc] : reps) {
              ++r.instances;
              if (detail::at_least(cmp_.uw(b, c, att)) && !detail::at_least(cmp_.uw(a, c, att))) {
                fail(r, cx_refined("not transitive" + tag, {la, lb, lc}, {a, b, c}, u));
                return;
              }
            }
          }
        }
      }
    }
  }

  void refined_monotonicity(CheckReport& r, Attitude att) {
    const auto& s = spec_.scale;
    const auto domain = refined_canonical_domain();
    UtilityAssignment u(spec_.space.size(), BinaryUtility(s.top(), s.top()));
    u.front() = BinaryUtility(s.top(), s.bottom());
    u.back() = BinaryUtility(s.bottom(), s.top());
    if (spec_.assignment) u = *spec_.assignment;
    auto lottery = [&](const WValue& a, const WValue& b) {
      RefinedLottery l{std::vector<WValue>(spec_.space.size())};
      l[spec_.space.best()] = a;
      l[spec_.space.worst()] = b;
      return l;
    };
    std::vector<RefinedBinaryUtility> vals;
    for (const auto& [a, b] : domain) vals.push_back(rpu(lottery(a, b), u, spec_.policy));
    const auto top = s.top().index;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      for (std::size_t j = 0; j < domain.size(); ++j) {
        ++r.instances;
        const bool strict = cmp_.uw(vals[i], vals[j], att) == Ordering::Greater;
        const bool axiom = detail::a2_strict(att, domain[i].first, domain[i].second, domain[j].first, domain[j].second, top);
        if (strict != axiom) {
          Counterexample cx;
          cx.summary = std::string("strict preference between refined canonical lotteries ") +
                       (axiom ? "missing" : "unexpected") + " under the axiom clause";
          const auto l1 = lottery(domain[i].first, domain[i].second), l2 = lottery(domain[j].first, domain[j].second);
          cx.items = {{"first", show(l1)}, {"second", show(l2)}, {"rpu(first)", show(vals[i])},
                      {"rpu(second)", show(vals[j])}, {"assignment", show_assignment(u)}};
          cx.refined_lotteries = {l1, l2};
          cx.assignment = u;
          fail(r, std::move(cx));
          return;
        }
      }
    }
  }

  void refined_substitutability(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto ls = lotteries(true);
    const auto coefs = coefficient_pairs();
    std::vector<RefinedLottery> refined;
    for (const auto& l : ls) refined.push_back(embed_lottery(l));
    for (const auto& u : assignments_) {
      std::vector<RefinedBinaryUtility> vals;
      for (const auto& l : refined) vals.push_back(rpu(l, u, spec_.policy));
      for (Attitude att : attitudes()) {
      for (std::size_t i = 0; i < refined.size(); ++i) {
        for (std::size_t j = 0; j < refined.size(); ++j) {
          if (i == j || cmp_.uw(vals[i], vals[j], att) != Ordering::Equal) continue;
          for (const auto& c : coefs) {
            for (const auto& ctx : refined) {
              ++r.instances;
              auto build = [&](const RefinedLottery& sub) {
                RefinedCompound m;
                m.branches.push_back(RefinedBranch{embed_level(c.lam()), sub});
                m.branches.push_back(RefinedBranch{embed_level(c.mu()), ctx});
                return reduce_rr(s, spec_.space, m, spec_.policy);
              };
              const auto m1 = build(refined[i]), m2 = build(refined[j]);
              const auto v1 = rpu(m1, u, spec_.policy), v2 = rpu(m2, u, spec_.policy);
              if (cmp_.uw(v1, v2, att) != Ordering::Equal) {
                Counterexample cx;
                cx.summary = "sub-lotteries with equal refined value give mixtures with different values (" +
                             std::string(to_string(att)) + ")";
                cx.items = {{"first", show(refined[i])}, {"second", show(refined[j])}, {"context", show(ctx)},
                            {"coefficients", show(c)}, {"mix(first)", show(m1)}, {"mix(second)", show(m2)},
                            {"rpu(mix(first))", show(v1)}, {"rpu(mix(second))", show(v2)},
                            {"assignment", show_assignment(u)}};
                cx.refined_lotteries = {refined[i], refined[j], ctx};
                cx.coefficients = {c.lam(), c.mu()};
                cx.assignment = u;
                fail(r, std::move(cx));
                return;
              }
            }
          }
        }
      }
      }
    }
  }

  /// Strict PU preference must survive under RPU, and raising the possibility
  /// of the best (worst) consequence must strictly improve (worsen) the RPU
  /// value.
  void refinement(CheckReport& r) {
    const auto& s = spec_.scale;
    const auto ls = lotteries(true);
    const auto best = spec_.space.best(), worst = spec_.space.worst();
    for (const auto& u : assignments_) {
      std::vector<RefinedBinaryUtility> rv;
      for (const auto& l : ls) rv.push_back(rpu(l, u, spec_.policy));
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (auto [x, expected] : {std::pair{best, Ordering::Greater}, std::pair{worst, Ordering::Less}}) {
          for (std::size_t d = ls[i][x].index + 1; d < s.size(); ++d) {
            SimpleLottery raised = ls[i];
            raised[x] = s.level(d);
            const auto vr = rpu(raised, u, spec_.policy);
            for (Attitude att : attitudes()) {
              ++r.instances;
              const Ordering o = cmp_.uw(vr, rv[i], att);
              if (o != expected) {
                Counterexample cx;
                cx.summary = "raising the possibility of " + spec_.space.name(x) + " does not give a strictly " +
                             (expected == Ordering::Greater ? "better" : "worse") + " refined value (" +
                             std::string(to_string(att)) + ": " + std::string(to_string(o)) + ")";
                cx.items = {{"first", show(raised)}, {"second", show(ls[i])}, {"pu(first)", show(pu(raised, u))},
                            {"pu(second)", show(pu(ls[i], u))}, {"rpu(first)", show(vr)}, {"rpu(second)", show(rv[i])},
                            {"assignment", show_assignment(u)}};
                cx.lotteries = {raised, ls[i]};
                cx.assignment = u;
                fail(r, std::move(cx));
                return;
              }
            }
          }
        }
      }
      std::vector<BinaryUtility> pv;
      for (const auto& l : ls) pv.push_back(pu(l, u));
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (std::size_t j = 0; j < ls.size(); ++j) {
          if (cmp_.uv(pv[i], pv[j]) != Ordering::Greater) continue;
          for (Attitude att : attitudes()) {
            ++r.instances;
            const Ordering o = cmp_.uw(rv[i], rv[j], att);
            if (o != Ordering::Greater) {
              Counterexample cx;
              cx.summary = "strict PU preference not kept by RPU (" + std::string(to_string(att)) + ": " +
                           std::string(to_string(o)) + ")";
              cx.items = {{"first", show(ls[i])}, {"second", show(ls[j])}, {"pu(first)", show(pv[i])},
                          {"pu(second)", show(pv[j])}, {"rpu(first)", show(rv[i])}, {"rpu(second)", show(rv[j])},
                          {"assignment", show_assignment(u)}};
              cx.lotteries = {ls[i], ls[j]};
              cx.assignment = u;
              fail(r, std::move(cx));
              return;
            }
          }
        }
      }
    }
  }

  // ---- counterexample builders --------------------------------------------

  Counterexample cx1(std::string summary, std::vector<std::string> roles, std::vector<const SimpleLottery*> ls,
                     std::vector<BinaryUtility> vals, const UtilityAssignment& u, std::string extra_role = {},
                     std::string extra = {}) const {
    Counterexample cx;
    cx.summary = std::move(summary);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      cx.items.emplace_back(roles[i], show(*ls[i]));
      cx.lotteries.push_back(*ls[i]);
    }
    for (std::size_t i = 0; i < vals.size(); ++i) cx.items.emplace_back("pu(" + roles[i] + ")", show(vals[i]));
    if (!extra_role.empty()) cx.items.emplace_back(std::move(extra_role), std::move(extra));
    cx.items.emplace_back("assignment", show_assignment(u));
    cx.assignment = u;
    return cx;
  }

  Counterexample cx_mix(std::string summary, const SimpleLottery& a, const SimpleLottery& b, const SimpleLottery& ctx,
                        const BinaryUtility& c, const BinaryUtility& va, const BinaryUtility& vb,
                        const UtilityAssignment& u) const {
    Counterexample cx;
    cx.summary = std::move(summary);
    cx.items = {{"first", show(a)},
                {"second", show(b)},
                {"context", show(ctx)},
                {"mix(first)", show_mix(c.lam(), show(a), c.mu(), show(ctx))},
                {"mix(second)", show_mix(c.lam(), show(b), c.mu(), show(ctx))},
                {"pu(mix(first))", show(va)},
                {"pu(mix(second))", show(vb)},
                {"assignment", show_assignment(u)}};
    cx.lotteries = {a, b, ctx};
    cx.coefficients = {c.lam(), c.mu()};
    cx.assignment = u;
    return cx;
  }

  Counterexample cx_refined(std::string summary, std::vector<const SimpleLottery*> ls,
                            std::vector<RefinedBinaryUtility> vals, const UtilityAssignment& u) const {
    Counterexample cx;
    cx.summary = std::move(summary);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      cx.items.emplace_back("lottery " + std::to_string(i + 1), show(*ls[i]));
      cx.lotteries.push_back(*ls[i]);
    }
    for (std::size_t i = 0; i < vals.size(); ++i) cx.items.emplace_back("rpu " + std::to_string(i + 1), show(vals[i]));
    cx.items.emplace_back("assignment", show_assignment(u));
    cx.assignment = u;
    return cx;
  }

  AuditSpec spec_;
  Comparators cmp_;
  std::vector<UtilityAssignment> assignments_;
};

inline AuditReport run_audit(AuditSpec spec, Comparators cmp = {}) { return Auditor(std::move(spec), std::move(cmp)).run(); }

}  // namespace qdm
