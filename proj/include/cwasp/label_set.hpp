#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "cwasp/error.hpp"

namespace cwasp {

/// Largest vertex label the table-based algorithms can represent.
inline constexpr int kMaxLabel = 64;

/// A subset of the labels [1, 64], stored as one machine word (label l is bit l-1).
class LabelSet {
 public:
  constexpr LabelSet() = default;
  LabelSet(std::initializer_list<int> labels) {
    for (int l : labels) insert(l);
  }

  static constexpr LabelSet from_bits(std::uint64_t bits) {
    LabelSet s;
    s.bits_ = bits;
    return s;
  }

  static void check_label(int label) {
    if (label < 1 || label > kMaxLabel) {
      throw ValidationError("label " + std::to_string(label) + " outside [1," +
                            std::to_string(kMaxLabel) + "]");
    }
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }

  bool contains(int label) const {
    return label >= 1 && label <= kMaxLabel && ((bits_ >> (label - 1)) & 1U) != 0;
  }
  void insert(int label) {
    check_label(label);
    bits_ |= std::uint64_t{1} << (label - 1);
  }
  void erase(int label) {
    if (label >= 1 && label <= kMaxLabel) bits_ &= ~(std::uint64_t{1} << (label - 1));
  }

  /// S^{i->j}: replaces i by j if i is a member, otherwise leaves S unchanged.
  LabelSet relabeled(int from, int to) const {
    if (!contains(from)) return *this;
    LabelSet out = *this;
    out.erase(from);
    out.insert(to);
    return out;
  }

  LabelSet operator|(LabelSet other) const { return from_bits(bits_ | other.bits_); }

  std::vector<int> labels() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int l : labels()) {
      if (!first) out += ",";
      out += std::to_string(l);
      first = false;
    }
    return out + "}";
  }

  friend constexpr bool operator==(LabelSet, LabelSet) = default;
  friend constexpr auto operator<=>(LabelSet a, LabelSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, LabelSet s) { return os << s.to_string(); }

}  // namespace cwasp
