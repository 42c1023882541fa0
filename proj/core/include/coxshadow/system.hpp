#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coxshadow {

/// Bond value used for m_st = infinity.
inline constexpr int kInfinity = 0;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Coxeter matrix. Generators are indexed 0..rank-1 internally and named
/// s1..sn externally.
class CoxeterSystem {
 public:
  CoxeterSystem() = default;

  /// Validates and takes ownership of a full bond matrix. Off-diagonal
  /// entries are >= 2 or kInfinity; the diagonal must be 1.
  CoxeterSystem(int rank, std::vector<std::vector<int>> bonds);

  int rank() const { return rank_; }
  /// m_st, or kInfinity.
  int bond(int s, int t) const { return bonds_[s][t]; }
  bool infinite_bond(int s, int t) const { return s != t && bonds_[s][t] == kInfinity; }
  const std::vector<std::vector<int>>& bonds() const { return bonds_; }
  const std::string& label(int s) const { return labels_[s]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Largest finite off-diagonal bond (0 when all are infinite).
  int max_finite_bond() const;

  /// Canonical text form ("rank N; m i j = v; ..."), listing every pair with
  /// i < j. Two systems are equal iff their canonical texts are equal.
  std::string canonical_text() const;

  friend bool operator==(const CoxeterSystem& a, const CoxeterSystem& b) {
    return a.bonds_ == b.bonds_;
  }

 private:
  int rank_ = 0;
  std::vector<std::vector<int>> bonds_;
  std::vector<std::string> labels_;
};

/// Parses either a preset name or the line format
///   rank N
///   m i j = v        (v an integer >= 2 or "inf"; unlisted pairs are 2)
/// Lines may also be separated by ';'. Throws ParseError.
CoxeterSystem parse_system(std::string_view text);

/// Names accepted by parse_system besides the explicit format.
std::vector<std::string> preset_names();

/// Word over generators, 0-based.
using Word = std::vector<int>;

/// "s1 s2 s1"; the empty word prints as "e".
std::string format_word(const Word& w);
/// Accepts "s1 s2", "s1*s2", "s1s2" and "e"/"" for the empty word.
Word parse_word(std::string_view text, int rank);

}  // namespace coxshadow
