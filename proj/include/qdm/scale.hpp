#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qdm/error.hpp"

namespace qdm {

/// A degree on a finite chain. `top` is the index of the chain's greatest
/// element, so two levels belong to the same scale exactly when their `top`
/// fields agree.
struct Level {
  std::uint16_t index = 0;
  std::uint16_t top = 1;

  constexpr bool is_bottom() const { return index == 0; }
  constexpr bool is_top() const { return index == top; }

  friend constexpr bool operator==(Level, Level) = default;

  /// Throws ScaleMismatch when the operands come from different scales.
  friend std::strong_ordering operator<=>(Level a, Level b) {
    if (a.top != b.top) {
      throw ScaleMismatch("levels from scales of size " + std::to_string(a.top + 1) + " and " +
                          std::to_string(b.top + 1));
    }
    return a.index <=> b.index;
  }
};

inline void require_same_scale(Level a, Level b) {
  if (a.top != b.top) {
    throw ScaleMismatch("levels from scales of size " + std::to_string(a.top + 1) + " and " +
                        std::to_string(b.top + 1));
  }
}

inline Level join(Level a, Level b) {
  require_same_scale(a, b);
  return a.index >= b.index ? a : b;
}

inline Level meet(Level a, Level b) {
  require_same_scale(a, b);
  return a.index <= b.index ? a : b;
}

/// The order-reversing involution n. On a finite chain index reversal is the
/// only such map.
constexpr Level involution(Level a) {
  return Level{static_cast<std::uint16_t>(a.top - a.index), a.top};
}

/// A finite totally ordered qualitative scale. Levels are ordered by their
/// position; the labels are display strings with no arithmetic meaning.
class Scale {
 public:
  explicit Scale(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2) throw InvalidArgument("a scale needs at least two levels");
    if (labels_.size() > 0xFFFF) throw InvalidArgument("scale too large");
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw InvalidArgument("empty scale label");
      if (!seen.insert(l).second) throw InvalidArgument("duplicate scale label '" + l + "'");
    }
  }

  /// `n` evenly spaced levels labelled k/(n-1) in short decimal form, so
  /// uniform(11) reads 0, 0.1, ..., 1.
  static Scale uniform(std::size_t n) {
    if (n < 2) throw InvalidArgument("a scale needs at least two levels");
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::ostringstream os;
      os.precision(4);
      os << static_cast<double>(k) / static_cast<double>(n - 1);
      labels.push_back(os.str());
    }
    std::unordered_set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != n) {
      for (std::size_t k = 0; k < n; ++k) labels[k] = "l" + std::to_string(k);
    }
    return Scale(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  Level level(std::size_t index) const {
    if (index >= labels_.size()) {
      throw InvalidArgument("level index " + std::to_string(index) + " outside scale of size " +
                            std::to_string(labels_.size()));
    }
    return Level{static_cast<std::uint16_t>(index), top_index()};
  }
  Level bottom() const { return level(0); }
  Level top() const { return level(labels_.size() - 1); }

  std::optional<Level> find(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return level(static_cast<std::size_t>(it - labels_.begin()));
  }

  bool contains(Level a) const { return a.top == top_index(); }

  void validate(Level a) const {
    if (!contains(a)) {
      throw ScaleMismatch("level belongs to a scale of size " + std::to_string(a.top + 1) +
                          ", expected " + std::to_string(labels_.size()));
    }
  }

  const std::string& label(Level a) const {
    validate(a);
    return labels_[a.index];
  }

  /// Every level, bottom first.
  std::vector<Level> levels() const {
    std::vector<Level> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(level(i));
    return out;
  }

  friend bool operator==(const Scale&, const Scale&) = default;

 private:
  std::uint16_t top_index() const { return static_cast<std::uint16_t>(labels_.size() - 1); }

  std::vector<std::string> labels_;
};

}  // namespace qdm
