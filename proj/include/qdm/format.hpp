#pragma once

#include <string>

#include "qdm/criteria.hpp"
#include "qdm/lottery.hpp"
#include "qdm/refined.hpp"
#include "qdm/scale.hpp"

// Text forms use the scale's labels: utilities as <lam, mu>, lotteries as
// [degree/consequence, ...], refined degrees in nested parentheses with
// singletons unwrapped, e.g. (1,(0.5,1),(0.5,0.6,1)).

namespace qdm {

inline std::string render(const Scale& scale, Level a) { return scale.label(a); }

inline std::string render(const Scale& scale, const ExtendedBinaryUtility& u) {
  return "<" + scale.label(u.lam) + ", " + scale.label(u.mu) + ">";
}

inline std::string render(const Scale& scale, const BinaryUtility& u) {
  return render(scale, static_cast<ExtendedBinaryUtility>(u));
}

inline std::string render(const Scale& scale, const IncreasingSeq& s) {
  if (s.size() == 1) return scale.label(s.front());
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += scale.label(s.levels()[i]);
  }
  return out + ")";
}

inline std::string render(const Scale& scale, const WValue& w) {
  if (w.is_zero()) return scale.label(scale.bottom());
  if (w.size() == 1) return render(scale, w.elems().front());
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += render(scale, w.elems()[i]);
  }
  return out + ")";
}

inline std::string render(const Scale& scale, const RefinedBinaryUtility& u) {
  return "<" + render(scale, u.alpha) + ", " + render(scale, u.beta) + ">";
}

namespace detail {

template <class Degree, class IsZero>
std::string render_distribution(const Scale& scale, const OutcomeSpace& space, const Distribution<Degree>& l,
                                IsZero is_zero) {
  std::string out = "[";
  bool first = true;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (is_zero(l.degrees[i])) continue;
    if (!first) out += ", ";
    first = false;
    out += render(scale, l.degrees[i]) + "/" + space.name(Outcome{i});
  }
  if (first) out += scale.label(scale.bottom()) + "/" + space.names().front();
  return out + "]";
}

template <class Degree>
std::string render_mixture(const Scale& scale, const OutcomeSpace& space, const Mixture<Degree>& m);

template <class Degree>
std::string render_child(const Scale& scale, const OutcomeSpace& space, const MixtureBranch<Degree>& b) {
  if (const auto* x = std::get_if<Outcome>(&b.child)) return space.name(*x);
  if (const auto* d = std::get_if<Distribution<Degree>>(&b.child)) return render(scale, space, *d);
  return render_mixture(scale, space, std::get<Mixture<Degree>>(b.child));
}

}  // namespace detail

inline std::string render(const Scale& scale, const OutcomeSpace& space, const SimpleLottery& l) {
  return detail::render_distribution(scale, space, l, [](Level d) { return d.is_bottom(); });
}

inline std::string render(const Scale& scale, const OutcomeSpace& space, const RefinedLottery& l) {
  return detail::render_distribution(scale, space, l, [](const WValue& w) { return w.is_zero(); });
}

namespace detail {

template <class Degree>
std::string render_mixture(const Scale& scale, const OutcomeSpace& space, const Mixture<Degree>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.branches.size(); ++i) {
    if (i) out += ", ";
    out += render(scale, m.branches[i].coefficient) + "/" + render_child(scale, space, m.branches[i]);
  }
  return out + "]";
}

}  // namespace detail

inline std::string render(const Scale& scale, const OutcomeSpace& space, const CompoundLottery& c) {
  return detail::render_mixture(scale, space, c);
}

inline std::string render(const Scale& scale, const OutcomeSpace& space, const RefinedCompound& c) {
  return detail::render_mixture(scale, space, c);
}

}  // namespace qdm
