#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdm/criteria.hpp"
#include "qdm/dsl.hpp"
#include "qdm/error.hpp"
#include "qdm/format.hpp"
#include "qdm/lottery.hpp"
#include "qdm/refined.hpp"

// Evaluates criteria on the lotteries of a parsed problem. Compound lotteries
// are reduced first: with (R) for the classical criteria, with (RR) for rpu.

namespace qdm {

using CriterionValue = std::variant<BinaryUtility, Level, ExtendedBinaryUtility, RefinedBinaryUtility>;

inline std::string render(const Scale& scale, const CriterionValue& v) {
  return std::visit([&](const auto& x) { return render(scale, x); }, v);
}

struct Evaluation {
  std::string lottery;
  Criterion criterion = Criterion::PU;
  std::optional<Attitude> attitude;
  std::string assignment;
  /// The simple lottery the criterion was applied to.
  std::string reduced;
  CriterionValue value;
  std::vector<std::string> warnings;
};

struct Comparison {
  Evaluation first;
  Evaluation second;
  Ordering verdict = Ordering::Equal;
};

struct Reduced {
  std::string lottery;
  Reduction under = Reduction::R;
  std::string result;
  std::variant<SimpleLottery, RefinedLottery> value;
};

class Session {
 public:
  explicit Session(Problem problem, RefinedPolicy policy = {}) : p_(std::move(problem)), policy_(policy) {}

  const Problem& problem() const { return p_; }
  const RefinedPolicy& policy() const { return policy_; }

  SimpleLottery reduce_classical(std::string_view name) const {
    return std::visit([&](const auto& v) { return reduce_r(p_.scale, p_.space, v); }, classical_value(p_, name));
  }

  RefinedLottery reduce_refined(std::string_view name) const {
    return std::visit([&](const auto& v) { return reduce_rr(p_.scale, p_.space, v, policy_); }, refined_value(p_, name));
  }

  Reduced reduce(std::string_view name, Reduction under) const {
    Reduced r{std::string(name), under, {}, SimpleLottery{}};
    if (under == Reduction::R) {
      auto l = reduce_classical(name);
      r.result = render(p_.scale, p_.space, l);
      r.value = std::move(l);
    } else {
      auto l = reduce_refined(name);
      r.result = render(p_.scale, p_.space, l);
      r.value = std::move(l);
    }
    return r;
  }

  /// The named assignment, or the only one of the kind the criterion uses.
  const AssignmentDecl& assignment_for(Criterion c, const std::optional<std::string>& name) const {
    const bool levels = uses_level_assignment(c);
    auto right_kind = [&](const AssignmentDecl& a) {
      return levels ? std::holds_alternative<LevelAssignment>(a.value) : std::holds_alternative<UtilityAssignment>(a.value);
    };
    const std::string kind = levels ? "level" : "binary utility";
    if (name) {
      const auto* a = p_.find_assignment(*name);
      if (!a) throw InvalidArgument("unknown assignment '" + *name + "'");
      if (!right_kind(*a)) {
        throw InvalidArgument("criterion " + std::string(to_string(c)) + " needs a " + kind + " assignment, '" + *name +
                              "' is not one");
      }
      return *a;
    }
    const AssignmentDecl* found = nullptr;
    for (const auto& a : p_.assignments) {
      if (!right_kind(a)) continue;
      if (found) {
        throw InvalidArgument("several " + kind + " assignments; name one for criterion " + std::string(to_string(c)));
      }
      found = &a;
    }
    if (!found) throw InvalidArgument("criterion " + std::string(to_string(c)) + " needs a " + kind + " assignment");
    return *found;
  }

  Evaluation evaluate(std::string_view lottery, Criterion c, std::optional<Attitude> att = {},
                      const std::optional<std::string>& assignment = {}) const {
    if (needs_attitude(c) && !att) throw InvalidArgument("criterion " + std::string(to_string(c)) + " needs an attitude");
    const auto& a = assignment_for(c, assignment);
    Evaluation e{std::string(lottery), c, needs_attitude(c) ? att : std::nullopt, a.name, {}, Level{}, {}};
    if (c == Criterion::RPU) {
      const auto& u = std::get<UtilityAssignment>(a.value);
      e.warnings = check_assignment(p_.scale, p_.space, u);
      const auto l = reduce_refined(lottery);
      e.reduced = render(p_.scale, p_.space, l);
      e.value = rpu(l, u, policy_);
      return e;
    }
    const auto l = reduce_classical(lottery);
    e.reduced = render(p_.scale, p_.space, l);
    if (c == Criterion::PU) {
      const auto& u = std::get<UtilityAssignment>(a.value);
      e.warnings = check_assignment(p_.scale, p_.space, u);
      e.value = pu(l, u);
      return e;
    }
    const auto& v = std::get<LevelAssignment>(a.value);
    e.warnings = check_assignment(p_.scale, p_.space, v);
    Warnings w;
    switch (c) {
      case Criterion::UOpt: e.value = u_opt(l, v); break;
      case Criterion::UPess: e.value = u_pess(l, v, &w); break;
      default: e.value = lex_pu(l, v, &w); break;
    }
    e.warnings.insert(e.warnings.end(), w.messages.begin(), w.messages.end());
    return e;
  }

  Comparison compare(std::string_view first, std::string_view second, Criterion c, std::optional<Attitude> att = {},
                     const std::optional<std::string>& assignment = {}) const {
    Comparison r{evaluate(first, c, att, assignment), evaluate(second, c, att, assignment), Ordering::Equal};
    const auto& a = r.first.value;
    const auto& b = r.second.value;
    switch (c) {
      case Criterion::PU: r.verdict = cmp_uv(std::get<BinaryUtility>(a), std::get<BinaryUtility>(b)); break;
      case Criterion::UOpt:
      case Criterion::UPess: r.verdict = compare_levels(std::get<Level>(a), std::get<Level>(b)); break;
      case Criterion::LexPU:
        r.verdict = cmp_ext(std::get<ExtendedBinaryUtility>(a), std::get<ExtendedBinaryUtility>(b), *att);
        break;
      case Criterion::RPU:
        r.verdict = cmp_uw(std::get<RefinedBinaryUtility>(a), std::get<RefinedBinaryUtility>(b), *att);
        break;
    }
    return r;
  }

 private:
  Problem p_;
  RefinedPolicy policy_;
};

}  // namespace qdm
