#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxshadow/group.hpp"

namespace coxshadow {

/// Outcome of reflecting a small root by a simple reflection.
struct Transition {
  enum class Kind { SmallRoot, NotSmall, NegativeSimple };
  Kind kind = Kind::NotSmall;
  int target = -1;  // index into the small roots, for SmallRoot

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// table[a][s] for small root index a and generator s.
using ReflectionTable = std::vector<std::vector<Transition>>;

/// The small roots, sorted by (depth, coordinates), with their index.
class SmallRoots {
 public:
  SmallRoots(const CoxeterGroup& group, std::vector<RootVec> sorted_roots);

  std::size_t size() const { return roots_.size(); }
  const RootVec& operator[](std::size_t i) const { return roots_[i]; }
  const std::vector<RootVec>& roots() const { return roots_; }
  std::optional<int> index_of(const RootVec& v) const;
  int depth(std::size_t i) const { return depths_[i]; }
  /// Index of the simple root a_s.
  int simple(int s) const { return simple_[s]; }
  const ReflectionTable& table() const { return table_; }

 private:
  std::vector<RootVec> roots_;
  std::vector<int> depths_;
  std::vector<int> simple_;
  std::unordered_map<RootVec, int, RootVecHash> index_;
  ReflectionTable table_;
};

/// beta dominates alpha: the wall of beta lies beyond the wall of alpha as
/// seen from id. Tested as (beta|alpha) >= 1 together with
/// depth(beta) > depth(alpha); a root never dominates itself.
bool dominates(const CoxeterGroup& group, const RootVec& beta, const RootVec& alpha);

/// Closure of the simple roots under a -> s.a whenever -1 < (a_s|a) < 0.
/// Throws CapExceeded beyond `cap` roots.
SmallRoots small_roots(const CoxeterGroup& group, std::size_t cap = 1'000'000);

/// The elementary walls: one wall per small root, in the same order.
std::vector<Wall> elementary_walls(const CoxeterGroup& group, const SmallRoots& sigma);

/// Recomputes the reflection table from scratch; SmallRoots builds the same
/// table on construction.
ReflectionTable reflection_table(const CoxeterGroup& group, const std::vector<RootVec>& sigma);

}  // namespace coxshadow
