#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "coxshadow/field.hpp"
#include "coxshadow/system.hpp"

namespace coxshadow {

/// Coordinates over the simple roots.
using RootVec = std::vector<FieldElem>;

struct RootVecHash {
  std::size_t operator()(const RootVec& v) const {
    std::size_t h = 0;
    for (const auto& x : v) h = h * 1000003u ^ x.hash();
    return h;
  }
};

/// Square matrix over the field, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int n, std::vector<FieldElem> entries) : n_(n), a_(std::move(entries)) {}

  int size() const { return n_; }
  const FieldElem& operator()(int i, int j) const { return a_[i * n_ + j]; }
  FieldElem& operator()(int i, int j) { return a_[i * n_ + j]; }
  RootVec column(int j) const;

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.a_ == b.a_; }
  std::size_t hash() const;

 private:
  int n_ = 0;
  std::vector<FieldElem> a_;
};

/// A group element in the geometric representation. The matrix acts on
/// root coordinates; `word` is the ShortLex-least reduced word.
struct Elt {
  Matrix mat;
  Matrix inv;
  int len = 0;
  Word word;

  friend bool operator==(const Elt& a, const Elt& b) { return a.mat == b.mat; }
  friend bool operator!=(const Elt& a, const Elt& b) { return !(a == b); }
};

struct EltHash {
  std::size_t operator()(const Elt& g) const { return g.mat.hash(); }
};

/// A wall, named by its positive root and carrying its reflection.
struct Wall {
  RootVec root;
  Elt refl;
};

/// Outcome of a radius-bounded join search. `element` is empty when no
/// common upper bound of length <= radius exists (the global join may still
/// exist further out).
struct JoinResult {
  std::optional<Elt> element;
  int radius = 0;
  bool found() const { return element.has_value(); }
};

/// The Coxeter group of a system together with its geometric
/// representation over Q(2cos(pi/N)). Immutable after construction.
class CoxeterGroup {
 public:
  explicit CoxeterGroup(CoxeterSystem sys);

  const CoxeterSystem& system() const { return sys_; }
  const Field& field() const { return field_; }
  int rank() const { return sys_.rank(); }

  /// B with (a_s|a_s) = 1, (a_s|a_t) = -cos(pi/m_st), -1 for m_st = inf.
  Matrix bilinear_form() const;
  /// 2(a_s|a_t); always an algebraic integer.
  const FieldElem& form2(int s, int t) const { return form2_[s * rank() + t]; }
  FieldElem inner(const RootVec& a, const RootVec& b) const;
  /// 2(a|b), kept separate since it avoids denominators.
  FieldElem inner2(const RootVec& a, const RootVec& b) const;

  RootVec simple_root(int s) const;
  std::optional<int> simple_index(const RootVec& v) const;
  /// s.a = a - 2(a_s|a) a_s
  RootVec reflect(int s, const RootVec& a) const;
  /// +1 for nonnegative nonzero vectors, -1 for nonpositive, 0 for zero.
  /// Roots are never mixed; only the first nonzero coordinate is examined.
  int root_sign(const RootVec& v) const;
  bool is_positive(const RootVec& v) const { return root_sign(v) > 0; }
  RootVec negate(const RootVec& v) const;
  RootVec apply(const Matrix& m, const RootVec& v) const;
  RootVec act(const Elt& g, const RootVec& v) const { return apply(g.mat, v); }
  RootVec act_inverse(const Elt& g, const RootVec& v) const { return apply(g.inv, v); }

  /// Number of reflections needed to bring a positive root to a simple one,
  /// plus one (simple roots have depth 1).
  int depth(const RootVec& beta) const;
  /// w and t with beta = w.a_t, w of length depth(beta) - 1.
  std::pair<Word, int> root_origin(const RootVec& beta) const;
  Wall wall_from_root(const RootVec& beta) const;
  std::string root_string(const RootVec& v) const;

  Elt identity() const;
  Elt generator(int s) const { return multiply(identity(), s); }
  /// g s
  Elt multiply(const Elt& g, int s) const;
  /// s g
  Elt left_multiply(int s, const Elt& g) const;
  Elt from_word(const Word& w) const;
  Elt product(const Elt& g, const Elt& h) const;
  Elt inverse(const Elt& g) const;
  /// l(gs) < l(g)
  bool is_descent(const Elt& g, int s) const;
  /// l(sg) < l(g)
  bool is_left_descent(int s, const Elt& g) const;

  /// Pairs (s, W) with l(gs) < l(g) and W the wall between g and gs.
  std::vector<std::pair<int, Wall>> descent_walls(const Elt& g) const;
  /// Positive roots beta with g^-1.beta < 0, in the order a geodesic from id
  /// to g crosses them.
  std::vector<RootVec> inversion_roots(const Elt& g) const;
  std::vector<Wall> inversion_walls(const Elt& g) const;
  bool separates(const RootVec& root, const Elt& x, const Elt& y) const;
  bool separates(const Wall& w, const Elt& x, const Elt& y) const {
    return separates(w.root, x, y);
  }
  /// Weak order: p lies on a geodesic from id to g.
  bool weak_leq(const Elt& p, const Elt& g) const;
  /// All p with p <= g, by descending along right descents.
  std::vector<Elt> lower_set(const Elt& g) const;
  /// Join restricted to upper bounds of length <= radius. Throws
  /// std::invalid_argument when radius < max(l(u), l(v)).
  JoinResult join(const Elt& u, const Elt& v, int radius) const;

 private:
  Word shortlex_word(Matrix inv, int len) const;
  /// g <- g s without refreshing the word.
  void step(Elt& g, int s) const;
  void right_mul_generator(Matrix& m, int s) const;
  void left_mul_generator(int s, Matrix& m) const;

  CoxeterSystem sys_;
  Field field_;
  std::vector<FieldElem> form2_;
  std::vector<RootVec> simple_roots_;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All elements of length <= radius, enumerated through the main
/// (sign-based) length computation. Ids are ordered by ShortLex word.
class ElementBall {
 public:
  ElementBall(const CoxeterGroup& group, int radius, std::size_t cap = 2'000'000);

  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const Elt& at(int id) const { return elements_[id]; }
  const std::vector<Elt>& elements() const { return elements_; }
  std::optional<int> find(const Elt& g) const;
  /// Id of g s, or -1 when it lies outside the ball.
  int right(int id, int s) const { return right_[id * rank_ + s]; }
  /// Number of elements of length <= r.
  std::size_t count_up_to(int r) const;
  /// Ids of all p with p <= g in the weak order, sorted.
  std::vector<int> down_set(int id) const;
  /// Ids of all w in the ball with g <= w, sorted.
  std::vector<int> up_set(int id) const;

  /// Walls crossed by edges of the ball, indexed in order of discovery.
  std::size_t wall_count() const { return walls_.size(); }
  const RootVec& wall_root(int w) const { return walls_[w]; }
  std::optional<int> wall_index(const RootVec& root) const;
  /// Inversion set of an element as a bitset over wall indices.
  const boost::dynamic_bitset<>& inversions(int id) const { return inv_[id]; }
  /// Length of x^-1 y.
  int distance(int x, int y) const { return static_cast<int>((inv_[x] ^ inv_[y]).count()); }

 private:
  int radius_;
  int rank_;
  std::vector<Elt> elements_;
  std::vector<int> right_;
  std::vector<std::size_t> level_end_;
  std::unordered_map<Elt, int, EltHash> index_;
  std::vector<RootVec> walls_;
  std::unordered_map<RootVec, int, RootVecHash> wall_index_;
  std::vector<boost::dynamic_bitset<>> inv_;
};

}  // namespace coxshadow
