#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "coxshadow/field.hpp"
#include "coxshadow/group.hpp"
#include "coxshadow/report.hpp"
#include "coxshadow/system.hpp"

// Brute-force ground truth. Nothing here touches root signs, small roots or
// automata: lengths are breadth-first depths in the Cayley graph, walls are
// reflection matrices x s x^-1, and inversion sets are the walls crossed by
// a breadth-first path.

namespace coxshadow {

class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

class OracleBall {
 public:
  int radius() const { return radius_; }
  int rank() const { return sys_.rank(); }
  std::size_t size() const { return mat_.size(); }
  const CoxeterSystem& system() const { return sys_; }
  const Field& field() const { return field_; }

  int length(int id) const { return len_[id]; }
  /// Neighbour id s, or -1 outside the ball.
  int neighbour(int id, int s) const { return nbr_[id * rank() + s]; }
  const Matrix& matrix(int id) const { return mat_[id]; }
  const Matrix& inverse_matrix(int id) const { return inv_mat_[id]; }
  /// Reduced word along breadth-first parents.
  Word word(int id) const;
  std::optional<int> find(const Matrix& m) const;
  /// Walks the word; throws InconclusiveError if it leaves the ball.
  int find_word(const Word& w) const;
  /// Number of elements of length <= r.
  std::size_t count_up_to(int r) const;

  std::size_t wall_count() const { return reflections_.size(); }
  const Matrix& wall_reflection(int w) const { return reflections_[w]; }
  /// x.a_s for the edge (x, xs) with x the endpoint nearer to id.
  const RootVec& wall_root(int w) const { return roots_[w]; }
  std::optional<int> wall_of_reflection(const Matrix& r) const;
  /// Wall crossed by the edge (id, id s), -1 if the edge leaves the ball.
  int edge_wall(int id, int s) const { return edge_wall_[id * rank() + s]; }
  const boost::dynamic_bitset<>& inversions(int id) const { return inversions_[id]; }

  /// p <= g, by descending along Cayley edges from g.
  bool below(int p, int g) const;
  std::vector<int> down_set(int g) const;
  /// 2(a|b) under the Tits form.
  FieldElem inner2(const RootVec& a, const RootVec& b) const;

 private:
  friend OracleBall build_ball(const CoxeterSystem& sys, int R, std::size_t cap);
  OracleBall(CoxeterSystem sys, Field field) : sys_(std::move(sys)), field_(std::move(field)) {}

  CoxeterSystem sys_;
  Field field_;
  int radius_ = 0;
  std::vector<FieldElem> form2_;
  std::vector<Matrix> mat_, inv_mat_;
  std::vector<int> len_, parent_, parent_gen_, nbr_, edge_wall_;
  std::vector<std::size_t> level_end_;
  std::unordered_map<Matrix, int, MatrixHash> index_;
  std::vector<Matrix> reflections_;
  std::vector<RootVec> roots_;
  std::unordered_map<Matrix, int, MatrixHash> wall_index_;
  std::vector<boost::dynamic_bitset<>> inversions_;
};

/// Every element of length <= R exactly once. Throws CapExceeded.
OracleBall build_ball(const CoxeterSystem& sys, int R, std::size_t cap = 2'000'000);

/// Reduced iff the breadth-first depth equals the word length. Throws
/// InconclusiveError for words longer than the radius.
bool oracle_reduced(const OracleBall& ball, const Word& w);
/// Throws InconclusiveError outside the ball.
int oracle_length(const OracleBall& ball, const Matrix& g);

/// Classes of the elements of length <= R - margin, by T(g^-1) restricted
/// to the elements of length <= margin (length additivity). `stable` is true
/// when margin - 1 already gives the same classes.
struct ConePartition {
  int margin = 0;
  std::vector<int> class_of;  // indexed by ball id, -1 beyond R - margin
  int classes = 0;
  bool stable = false;
};
ConePartition oracle_cone_partition(const OracleBall& ball, int margin);

/// Classes by inversion set intersected with the given walls.
std::vector<int> oracle_wall_partition(const OracleBall& ball, const std::vector<int>& walls);

/// The unique member below all others, or two witnesses against it.
struct PartMinimum {
  std::optional<int> minimum;
  std::pair<int, int> witnesses{-1, -1};
  bool unique() const { return minimum.has_value(); }
};
PartMinimum oracle_part_minimum(const OracleBall& ball, const std::vector<int>& members);

/// Walls with no other wall between them and id, up to the given depth
/// (1 + distance from id), decided from the dual edges inside the ball.
/// `edge_radius` limits the edges used; -1 means all.
std::vector<int> oracle_elementary_walls(const OracleBall& ball, int depth, int edge_radius = -1);
/// 1 + the distance from id to the wall.
std::vector<int> oracle_wall_depths(const OracleBall& ball);

/// Roots of the elementary walls up to `depth`, ordered by wall depth. The
/// result must agree between balls of radius 2 depth + 5 and 2 depth + 9;
/// otherwise InconclusiveError.
std::vector<RootVec> oracle_small_roots(const CoxeterSystem& sys, int depth,
                                        std::size_t cap = 2'000'000);

/// Wall `alpha` separates wall `beta` from id, judged on the dual edges of
/// beta inside the ball.
bool oracle_dominates(const OracleBall& ball, int beta, int alpha);

/// Walls w, u intersect, i.e. |(w|u)| < 1 for their roots.
bool oracle_walls_meet(const OracleBall& ball, int w, int u);

/// Separation property for sharp-angled pairs: every element of a geometric
/// fundamental domain that is separated from one of the two walls is also
/// separated from every other wall of the residue. Residues leaving the ball
/// are skipped and counted.
Report verify_bipodality(const CoxeterSystem& sys, int R, std::size_t cap = 2'000'000);
Report verify_bipodality(const OracleBall& ball);

}  // namespace coxshadow
