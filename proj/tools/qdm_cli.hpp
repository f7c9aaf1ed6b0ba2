#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdm/audit.hpp"
#include "qdm/census.hpp"
#include "qdm/dsl.hpp"
#include "qdm/session.hpp"

namespace qdm::cli {

enum Exit : int { kOk = 0, kEvaluationError = 1, kUsageError = 2, kAuditFailed = 3 };

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::vector<std::string> lotteries;
  std::string criterion;
  std::string attitude;
  std::string assignment;
  std::string format = "text";
  std::string under;
  bool nabla_dedupe = false;
  bool delta_dedupe = true;
  std::uint64_t budget = 50'000'000;
  std::vector<std::string> checks;
  std::size_t consequences = 3;
  std::size_t levels = 3;
  std::size_t depth = 2;
  std::optional<std::uint64_t> shuffle_seed;
  bool timing = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::optional<Criterion> criterion_flag(const Options& o) {
  if (o.criterion.empty()) return std::nullopt;
  auto c = parse_criterion(o.criterion);
  if (!c) throw UsageError("unknown criterion '" + o.criterion + "' (pu, uopt, upess, lexpu, rpu)");
  return c;
}

inline std::optional<Attitude> attitude_flag(const Options& o) {
  if (o.attitude.empty()) return std::nullopt;
  auto a = parse_attitude(o.attitude);
  if (!a) throw UsageError("unknown attitude '" + o.attitude + "' (pessimistic, optimistic, neutral)");
  return a;
}

inline Json policy_json(const RefinedPolicy& p) {
  return Json{{"nabla_dedupe", p.nabla_dedupe}, {"delta_dedupe", p.delta_dedupe}};
}

inline std::string policy_text(const RefinedPolicy& p) {
  return std::string("nabla_dedupe=") + (p.nabla_dedupe ? "true" : "false") +
         " delta_dedupe=" + (p.delta_dedupe ? "true" : "false");
}

inline Json eval_json(const Scale& s, const Evaluation& e) {
  Json j{{"lottery", e.lottery}, {"criterion", to_string(e.criterion)}};
  if (e.attitude) j["attitude"] = to_string(*e.attitude);
  j["assignment"] = e.assignment;
  j["reduced"] = e.reduced;
  j["value"] = render(s, e.value);
  j["warnings"] = e.warnings;
  return j;
}

inline std::string heading(const Evaluation& e) {
  std::string h = std::string(to_string(e.criterion));
  if (e.attitude) h += ", " + std::string(to_string(*e.attitude));
  return h + ", assignment " + e.assignment;
}

/// The queries of one kind from the file, or the one given on the command
/// line; flags override the query's settings.
inline std::vector<Query> queries(const Problem& p, const Options& o, QueryKind kind, std::size_t arity) {
  std::vector<Query> out;
  if (!o.lotteries.empty()) {
    if (o.lotteries.size() != arity) {
      throw UsageError(std::string(to_string(kind)) + " takes " + std::to_string(arity) + " lottery name" +
                       (arity > 1 ? "s" : ""));
    }
    Query q;
    q.kind = kind;
    q.lotteries = o.lotteries;
    out.push_back(q);
  } else {
    for (const auto& q : p.queries) {
      if (q.kind == kind) out.push_back(q);
    }
    if (out.empty()) {
      throw UsageError("no `query " + std::string(to_string(kind)) + "` in " + o.file + " and no lottery given");
    }
  }
  for (auto& q : out) {
    for (const auto& name : q.lotteries) {
      if (!p.find_lottery(name)) throw UsageError("unknown lottery '" + name + "'");
    }
    if (auto c = criterion_flag(o)) q.criterion = c;
    if (auto a = attitude_flag(o)) q.attitude = a;
    if (!o.assignment.empty()) q.assignment = o.assignment;
    if (!o.under.empty()) q.under = o.under == "RR" ? Reduction::RR : Reduction::R;
    if (kind != QueryKind::Reduce && !q.criterion) throw UsageError("no criterion given (use --criterion)");
  }
  return out;
}

inline void print_warnings(std::ostream& err, const std::vector<std::string>& ws) {
  for (const auto& w : ws) err << "warning: " << w << "\n";
}

inline int run_eval(const Options& o, std::ostream& out, std::ostream& err, const RefinedPolicy& policy) {
  Session session(parse(read_file(o.file)), policy);
  const auto& s = session.problem().scale;
  Json results = Json::array();
  for (const auto& q : queries(session.problem(), o, QueryKind::Eval, 1)) {
    const auto e = session.evaluate(q.lotteries[0], *q.criterion, q.attitude, q.assignment);
    print_warnings(err, e.warnings);
    if (o.format == "text") {
      out << "eval " << e.lottery << " (" << heading(e) << "): " << render(s, e.value) << "\n";
      out << "  on " << e.reduced << "\n";
    }
    results.push_back(eval_json(s, e));
  }
  if (o.format != "text") {
    out << Json{{"command", "eval"}, {"input", o.file}, {"policy", policy_json(policy)}, {"results", results}}.dump(2)
        << "\n";
  }
  return kOk;
}

inline int run_compare(const Options& o, std::ostream& out, std::ostream& err, const RefinedPolicy& policy) {
  Session session(parse(read_file(o.file)), policy);
  const auto& s = session.problem().scale;
  Json results = Json::array();
  for (const auto& q : queries(session.problem(), o, QueryKind::Compare, 2)) {
    const auto c = session.compare(q.lotteries[0], q.lotteries[1], *q.criterion, q.attitude, q.assignment);
    print_warnings(err, c.first.warnings);
    if (o.format == "text") {
      out << "compare " << c.first.lottery << " " << c.second.lottery << " (" << heading(c.first)
          << "): " << to_string(c.verdict) << "\n";
      for (const auto* e : {&c.first, &c.second}) {
        out << "  " << e->lottery << ": " << render(s, e->value) << "  on " << e->reduced << "\n";
      }
    }
    Json j{{"first", eval_json(s, c.first)}, {"second", eval_json(s, c.second)}, {"verdict", to_string(c.verdict)}};
    results.push_back(j);
  }
  if (o.format != "text") {
    out << Json{{"command", "compare"}, {"input", o.file}, {"policy", policy_json(policy)}, {"results", results}}.dump(2)
        << "\n";
  }
  return kOk;
}

inline int run_reduce(const Options& o, std::ostream& out, std::ostream&, const RefinedPolicy& policy) {
  Session session(parse(read_file(o.file)), policy);
  Json results = Json::array();
  for (const auto& q : queries(session.problem(), o, QueryKind::Reduce, 1)) {
    const auto r = session.reduce(q.lotteries[0], q.under);
    if (o.format == "text") out << "reduce " << r.lottery << " under " << to_string(r.under) << ": " << r.result << "\n";
    results.push_back(Json{{"lottery", r.lottery}, {"under", to_string(r.under)}, {"result", r.result}});
  }
  if (o.format != "text") {
    out << Json{{"command", "reduce"}, {"input", o.file}, {"policy", policy_json(policy)}, {"results", results}}.dump(2)
        << "\n";
  }
  return kOk;
}

/// Scale, consequences and (optionally) fixed assignments from a file, or a
/// generated space of the requested size.
struct Setting {
  std::optional<Problem> problem;
  Scale scale;
  OutcomeSpace space;
};

inline Setting setting(const Options& o) {
  if (!o.file.empty()) {
    auto p = parse(read_file(o.file));
    Scale s = p.scale;
    OutcomeSpace x = p.space;
    return {std::move(p), std::move(s), std::move(x)};
  }
  if (o.consequences < 2) throw UsageError("--consequences must be at least 2");
  if (o.levels < 2) throw UsageError("--levels must be at least 2");
  return {std::nullopt, Scale::uniform(o.levels), OutcomeSpace::numbered(o.consequences)};
}

inline const AssignmentDecl* pick_assignment(const Problem& p, const Options& o, bool levels) {
  if (!o.assignment.empty()) {
    const auto* a = p.find_assignment(o.assignment);
    if (!a) throw UsageError("unknown assignment '" + o.assignment + "'");
    return a;
  }
  const AssignmentDecl* found = nullptr;
  for (const auto& a : p.assignments) {
    if (std::holds_alternative<LevelAssignment>(a.value) != levels) continue;
    if (found) throw UsageError("several assignments in " + o.file + "; choose one with --assignment");
    found = &a;
  }
  return found;
}

inline Json counterexample_json(const Counterexample& cx) {
  Json items = Json::array();
  for (const auto& [role, text] : cx.items) items.push_back(Json{{"role", role}, {"text", text}});
  return Json{{"summary", cx.summary}, {"items", items}};
}

inline int run_audit(const Options& o, std::ostream& out, std::ostream& err, const RefinedPolicy& policy) {
  auto st = setting(o);
  AuditSpec spec(st.scale, st.space);
  spec.max_depth = o.depth;
  spec.criterion = criterion_flag(o);
  spec.attitude = attitude_flag(o);
  spec.budget = o.budget;
  spec.policy = policy;
  spec.shuffle_seed = o.shuffle_seed;
  std::string assignment_name = "enumerated";
  if (st.problem) {
    const bool levels = spec.criterion && uses_level_assignment(*spec.criterion);
    if (const auto* a = pick_assignment(*st.problem, o, levels)) {
      if (const auto* u = std::get_if<UtilityAssignment>(&a->value)) spec.assignment = *u;
      if (const auto* v = std::get_if<LevelAssignment>(&a->value)) spec.level_assignment = *v;
      assignment_name = a->name;
    }
  } else if (!o.assignment.empty()) {
    throw UsageError("--assignment needs an input file");
  }
  for (const auto& name : o.checks) {
    auto c = parse_check(name);
    if (!c) throw UsageError("unknown check '" + name + "'");
    spec.checks.push_back(*c);
  }
  const std::string criterion = spec.criterion ? std::string(to_string(*spec.criterion)) : "any";
  Auditor auditor(spec);
  const auto report = auditor.run();

  std::size_t failed = 0;
  for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
  for (const auto& c : report.checks) print_warnings(err, c.warnings);

  if (o.format == "text") {
    out << "audit: " << st.space.size() << " consequences, " << st.scale.size() << " levels, depth " << spec.max_depth
        << ", criterion " << criterion << ", assignment " << assignment_name << ", " << policy_text(policy) << "\n";
    for (const auto& c : report.checks) {
      std::string name(to_string(c.check));
      name.resize(std::max<std::size_t>(name.size(), 10), ' ');
      out << name << " " << (c.passed ? "pass" : "FAIL") << "  " << c.instances << " instances";
      if (c.witness_count) out << ", " << c.witness_count << " witnesses";
      if (o.timing) out << ", " << c.elapsed_ms << " ms";
      out << "\n";
      if (c.counterexample) {
        out << "  " << c.counterexample->summary << "\n";
        for (const auto& [role, text] : c.counterexample->items) out << "    " << role << ": " << text << "\n";
      }
    }
    if (failed) {
      out << "result: FAIL (" << failed << " of " << report.checks.size() << " checks failed)\n";
    } else {
      out << "result: pass (" << report.checks.size() << " checks)\n";
    }
  } else {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      Json j{{"name", to_string(c.check)}, {"verdict", c.passed ? "pass" : "fail"}, {"instances", c.instances}};
      j["witness_count"] = c.witness_count;
      Json ws = Json::array();
      for (const auto& w : c.witnesses) ws.push_back(Json{{"instance", w.instance}, {"witness", w.witness}});
      j["witnesses"] = ws;
      j["counterexample"] = c.counterexample ? counterexample_json(*c.counterexample) : Json(nullptr);
      j["warnings"] = c.warnings;
      if (o.timing) j["duration_ms"] = c.elapsed_ms;
      checks.push_back(j);
    }
    Json names = Json::array();
    for (Check c : auditor.selected_checks()) names.push_back(to_string(c));
    Json echo{{"input", o.file.empty() ? Json(nullptr) : Json(o.file)},
              {"consequences", st.space.names()},
              {"levels", st.scale.labels()},
              {"depth", spec.max_depth},
              {"criterion", criterion},
              {"attitude", spec.attitude ? Json(std::string(to_string(*spec.attitude))) : Json(nullptr)},
              {"assignment", assignment_name},
              {"checks", names},
              {"budget", spec.budget},
              {"shuffle_seed", spec.shuffle_seed ? Json(*spec.shuffle_seed) : Json(nullptr)}};
    out << Json{{"command", "audit"}, {"spec", echo}, {"policy", policy_json(policy)}, {"passed", failed == 0},
                {"checks", checks}}
               .dump(2)
        << "\n";
  }
  return failed ? kAuditFailed : kOk;
}

inline int run_census(const Options& o, std::ostream& out, std::ostream& err) {
  auto st = setting(o);
  const auto& s = st.scale;
  std::optional<UtilityAssignment> u;
  std::string assignment_name = "default";
  if (st.problem) {
    if (const auto* a = pick_assignment(*st.problem, o, false)) {
      u = std::get<UtilityAssignment>(a->value);
      assignment_name = a->name;
    }
  }
  if (!u) {
    // best <1,0>, every other consequence <1,1>, worst <0,1>
    u = UtilityAssignment(st.space.size(), BinaryUtility(s.top(), s.top()));
    u->front() = BinaryUtility(s.top(), s.bottom());
    u->back() = BinaryUtility(s.bottom(), s.top());
  }
  const auto r = census_pu_classes(s, st.space, *u, o.budget);
  print_warnings(err, r.warnings);
  if (o.format == "text") {
    out << "census: " << st.space.size() << " consequences, " << s.size() << " levels, assignment " << assignment_name
        << "\n";
    out << "normalized lotteries: " << r.enumerated << " enumerated, " << r.formula_count << " by formula, "
        << r.closed_form_count << " by closed form\n";
    out << "classes: " << r.class_count() << " of " << 2 * s.size() - 1 << "\n";
    for (const auto& c : r.classes) out << "  " << render(s, c.value) << "  " << c.count << "\n";
    if (r.most_populated) out << "most populated: " << render(s, r.most_populated->value) << "\n";
    out << "range covering: " << (r.range_covering ? "yes" : "no") << "\n";
    out << "monotone: " << (r.monotone ? (*r.monotone ? "yes" : "no") : "n/a") << "\n";
  } else {
    Json classes = Json::array();
    for (const auto& c : r.classes) classes.push_back(Json{{"value", render(s, c.value)}, {"count", c.count}});
    Json j{{"command", "census"},
           {"spec", Json{{"input", o.file.empty() ? Json(nullptr) : Json(o.file)},
                         {"consequences", st.space.names()},
                         {"levels", s.labels()},
                         {"assignment", assignment_name}}},
           {"formula_count", r.formula_count},
           {"closed_form_count", r.closed_form_count},
           {"enumerated", r.enumerated},
           {"class_count", r.class_count()},
           {"classes", classes},
           {"most_populated", r.most_populated ? Json(render(s, r.most_populated->value)) : Json(nullptr)},
           {"range_covering", r.range_covering},
           {"monotone", r.monotone ? Json(*r.monotone) : Json(nullptr)},
           {"warnings", r.warnings}};
    out << j.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative possibilistic decision criteria: evaluate, compare, reduce, audit, census"};
  app.name("qdm");
  app.require_subcommand(1, 1);
  Options o;

  auto policy_flags = [&](CLI::App* sub) {
    sub->add_flag("--nabla-dedupe", o.nabla_dedupe, "Remove duplicate elements when merging refined degrees");
    sub->add_flag("--delta-dedupe", o.delta_dedupe, "Remove duplicate pairwise merges (default true)");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "structured", "json"}));
    policy_flags(sub);
  };
  auto criterion_flags = [&](CLI::App* sub) {
    sub->add_option("--criterion", o.criterion, "pu, uopt, upess, lexpu or rpu");
    sub->add_option("--attitude", o.attitude, "pessimistic, optimistic or neutral");
    sub->add_option("--assignment", o.assignment, "Assignment name from the input file");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a criterion on lotteries");
  eval->add_option("file", o.file, "Problem file (.qdm)")->required();
  eval->add_option("lottery", o.lotteries, "Lottery name (default: the file's eval queries)")->expected(0, 1);
  criterion_flags(eval);
  common(eval);

  auto* compare = app.add_subcommand("compare", "Compare two lotteries");
  compare->add_option("file", o.file, "Problem file (.qdm)")->required();
  compare->add_option("lotteries", o.lotteries, "Two lottery names (default: the file's compare queries)")
      ->expected(0, 2);
  criterion_flags(compare);
  common(compare);

  auto* reduce = app.add_subcommand("reduce", "Reduce a compound lottery");
  reduce->add_option("file", o.file, "Problem file (.qdm)")->required();
  reduce->add_option("lottery", o.lotteries, "Lottery name (default: the file's reduce queries)")->expected(0, 1);
  reduce->add_option("--under", o.under, "R or RR")->check(CLI::IsMember({"R", "RR"}));
  common(reduce);

  auto* audit = app.add_subcommand("audit", "Exhaustively check axioms on a small space");
  audit->add_option("file", o.file, "Problem file supplying scale, consequences and assignment");
  audit->add_option("--consequences", o.consequences, "Number of consequences without a file")->capture_default_str();
  audit->add_option("--levels", o.levels, "Number of scale levels without a file")->capture_default_str();
  audit->add_option("--depth", o.depth, "Lottery nesting depth, 1 or 2")->check(CLI::Range(1, 2))->capture_default_str();
  audit->add_option("--checks", o.checks, "Checks to run (comma separated)")->delimiter(',');
  audit->add_option("--budget", o.budget, "Maximum evaluations per check")->capture_default_str();
  audit->add_option("--shuffle-seed", o.shuffle_seed, "Permute enumeration order");
  audit->add_flag("--timing", o.timing, "Report durations");
  criterion_flags(audit);
  common(audit);

  auto* census = app.add_subcommand("census", "Count lotteries per PU class");
  census->add_option("file", o.file, "Problem file supplying scale, consequences and assignment");
  census->add_option("--consequences", o.consequences, "Number of consequences without a file")->capture_default_str();
  census->add_option("--levels", o.levels, "Number of scale levels without a file")->capture_default_str();
  census->add_option("--assignment", o.assignment, "Binary assignment name from the input file");
  census->add_option("--budget", o.budget, "Maximum lotteries enumerated")->capture_default_str();
  census->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const RefinedPolicy policy{o.nabla_dedupe, o.delta_dedupe};
  try {
    if (*eval) return detail::run_eval(o, out, err, policy);
    if (*compare) return detail::run_compare(o, out, err, policy);
    if (*reduce) return detail::run_reduce(o, out, err, policy);
    if (*audit) return detail::run_audit(o, out, err, policy);
    return detail::run_census(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << (o.file.empty() ? std::string("input") : o.file) << ":" << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kEvaluationError;
  }
}

}  // namespace qdm::cli
