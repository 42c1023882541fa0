#include "coxshadow/group.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

namespace coxshadow {

RootVec Matrix::column(int j) const {
  RootVec v;
  v.reserve(n_);
  for (int i = 0; i < n_; ++i) v.push_back((*this)(i, j));
  return v;
}

std::size_t Matrix::hash() const {
  std::size_t h = 0;
  for (const auto& x : a_) h = h * 0x9E3779B97F4A7C15ull ^ x.hash();
  return h;
}

CoxeterGroup::CoxeterGroup(CoxeterSystem sys)
    : sys_(std::move(sys)), field_(Field::conductor_for(sys_)) {
  int n = rank();
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t) form2_.push_back(field_.from_int(2));
      else if (sys_.bond(s, t) == kInfinity) form2_.push_back(field_.from_int(-2));
      else form2_.push_back(field_.neg(field_.two_cos_pi_over(sys_.bond(s, t))));
    }
  }
  for (int s = 0; s < n; ++s) {
    RootVec v(n, field_.zero());
    v[s] = field_.one();
    simple_roots_.push_back(std::move(v));
  }
}

Matrix CoxeterGroup::bilinear_form() const {
  int n = rank();
  std::vector<FieldElem> entries;
  FieldElem half = field_.from_rational(1, 2);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) entries.push_back(field_.mul(form2(s, t), half));
  return Matrix(n, std::move(entries));
}

FieldElem CoxeterGroup::inner2(const RootVec& a, const RootVec& b) const {
  FieldElem acc = field_.zero();
  int n = rank();
  for (int s = 0; s < n; ++s) {
    if (a[s].is_zero()) continue;
    FieldElem row = field_.zero();
    for (int t = 0; t < n; ++t) row = field_.add_mul(row, form2(s, t), b[t]);
    acc = field_.add_mul(acc, a[s], row);
  }
  return acc;
}

FieldElem CoxeterGroup::inner(const RootVec& a, const RootVec& b) const {
  return field_.mul(inner2(a, b), field_.from_rational(1, 2));
}

RootVec CoxeterGroup::simple_root(int s) const { return simple_roots_[s]; }

std::optional<int> CoxeterGroup::simple_index(const RootVec& v) const {
  for (int s = 0; s < rank(); ++s)
    if (v == simple_roots_[s]) return s;
  return std::nullopt;
}

RootVec CoxeterGroup::reflect(int s, const RootVec& a) const {
  RootVec r = a;
  FieldElem k = field_.zero();
  for (int t = 0; t < rank(); ++t) k = field_.add_mul(k, form2(s, t), a[t]);
  r[s] = field_.sub(r[s], k);
  return r;
}

int CoxeterGroup::root_sign(const RootVec& v) const {
  for (const auto& x : v) {
    if (!x.is_zero()) return field_.sign(x);
  }
  return 0;
}

RootVec CoxeterGroup::negate(const RootVec& v) const {
  RootVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(field_.neg(x));
  return r;
}

RootVec CoxeterGroup::apply(const Matrix& m, const RootVec& v) const {
  int n = rank();
  RootVec r(n, field_.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] = field_.add_mul(r[i], m(i, j), v[j]);
  return r;
}

std::pair<Word, int> CoxeterGroup::root_origin(const RootVec& beta) const {
  if (!is_positive(beta)) throw std::invalid_argument("root_origin needs a positive root");
  RootVec gamma = beta;
  Word path;
  while (true) {
    if (auto t = simple_index(gamma)) return {path, *t};
    bool moved = false;
    for (int s = 0; s < rank(); ++s) {
      RootVec a_s = simple_roots_[s];
      if (field_.sign(inner2(a_s, gamma)) > 0) {
        gamma = reflect(s, gamma);
        path.push_back(s);
        moved = true;
        break;
      }
    }
    if (!moved) throw std::invalid_argument("vector is not a root: " + root_string(beta));
    if (path.size() > 100000) throw std::runtime_error("root depth runaway");
  }
}

int CoxeterGroup::depth(const RootVec& beta) const {
  return static_cast<int>(root_origin(beta).first.size()) + 1;
}

Wall CoxeterGroup::wall_from_root(const RootVec& beta) const {
  auto [path, t] = root_origin(beta);
  Word w = path;
  w.push_back(t);
  w.insert(w.end(), path.rbegin(), path.rend());
  return Wall{beta, from_word(w)};
}

std::string CoxeterGroup::root_string(const RootVec& v) const {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += field_.to_string(v[i]);
  }
  return out + "]";
}

Elt CoxeterGroup::identity() const {
  int n = rank();
  std::vector<FieldElem> e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e.push_back(i == j ? field_.one() : field_.zero());
  Matrix m(n, e);
  return Elt{m, m, 0, {}};
}

void CoxeterGroup::right_mul_generator(Matrix& m, int s) const {
  int n = rank();
  RootVec col = m.column(s);
  for (int j = 0; j < n; ++j) {
    if (j == s || form2(s, j).is_zero()) continue;
    FieldElem k = field_.neg(form2(s, j));
    for (int i = 0; i < n; ++i) m(i, j) = field_.add_mul(m(i, j), col[i], k);
  }
  for (int i = 0; i < n; ++i) m(i, s) = field_.neg(col[i]);
}

void CoxeterGroup::left_mul_generator(int s, Matrix& m) const {
  int n = rank();
  for (int c = 0; c < n; ++c) {
    FieldElem v = field_.neg(m(s, c));
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      v = field_.sub(v, field_.mul(form2(s, j), m(j, c)));
    }
    m(s, c) = v;
  }
}

Word CoxeterGroup::shortlex_word(Matrix inv, int len) const {
  // Peel off the smallest left descent each time: s is a left descent of h
  // iff h^-1.a_s < 0, and (s h)^-1 = h^-1 s.
  Word w;
  w.reserve(len);
  for (int step = 0; step < len; ++step) {
    int found = -1;
    for (int s = 0; s < rank(); ++s) {
      if (root_sign(inv.column(s)) < 0) {
        found = s;
        break;
      }
    }
    if (found < 0) throw std::logic_error("no left descent while peeling a reduced word");
    w.push_back(found);
    right_mul_generator(inv, found);
  }
  return w;
}

void CoxeterGroup::step(Elt& g, int s) const {
  g.len = root_sign(g.mat.column(s)) > 0 ? g.len + 1 : g.len - 1;
  right_mul_generator(g.mat, s);
  left_mul_generator(s, g.inv);
}

Elt CoxeterGroup::multiply(const Elt& g, int s) const {
  Elt r = g;
  step(r, s);
  r.word = shortlex_word(r.inv, r.len);
  return r;
}

Elt CoxeterGroup::left_multiply(int s, const Elt& g) const {
  Elt r = g;
  r.len = root_sign(g.inv.column(s)) > 0 ? g.len + 1 : g.len - 1;
  left_mul_generator(s, r.mat);
  right_mul_generator(r.inv, s);
  r.word = shortlex_word(r.inv, r.len);
  return r;
}

Elt CoxeterGroup::from_word(const Word& w) const {
  Elt g = identity();
  for (int s : w) {
    if (s < 0 || s >= rank()) throw std::out_of_range("generator index out of range");
    step(g, s);
  }
  g.word = shortlex_word(g.inv, g.len);
  return g;
}

Elt CoxeterGroup::product(const Elt& g, const Elt& h) const {
  Elt r = g;
  for (int s : h.word) step(r, s);
  r.word = shortlex_word(r.inv, r.len);
  return r;
}

Elt CoxeterGroup::inverse(const Elt& g) const {
  Elt r{g.inv, g.mat, g.len, {}};
  r.word = shortlex_word(r.inv, r.len);
  return r;
}

bool CoxeterGroup::is_descent(const Elt& g, int s) const {
  return root_sign(g.mat.column(s)) < 0;
}

bool CoxeterGroup::is_left_descent(int s, const Elt& g) const {
  return root_sign(g.inv.column(s)) < 0;
}

std::vector<std::pair<int, Wall>> CoxeterGroup::descent_walls(const Elt& g) const {
  std::vector<std::pair<int, Wall>> out;
  for (int s = 0; s < rank(); ++s) {
    RootVec col = g.mat.column(s);
    if (root_sign(col) >= 0) continue;
    // The reflection g s g^-1 fixes the edge (g, gs).
    Elt refl = product(multiply(g, s), inverse(g));
    out.emplace_back(s, Wall{negate(col), std::move(refl)});
  }
  return out;
}

std::vector<RootVec> CoxeterGroup::inversion_roots(const Elt& g) const {
  std::vector<RootVec> out;
  out.reserve(g.len);
  Matrix prefix = identity().mat;
  for (int s : g.word) {
    out.push_back(prefix.column(s));
    right_mul_generator(prefix, s);
  }
  return out;
}

std::vector<Wall> CoxeterGroup::inversion_walls(const Elt& g) const {
  std::vector<Wall> out;
  for (auto& r : inversion_roots(g)) out.push_back(wall_from_root(r));
  return out;
}

bool CoxeterGroup::separates(const RootVec& root, const Elt& x, const Elt& y) const {
  bool nx = root_sign(act_inverse(x, root)) < 0;
  bool ny = root_sign(act_inverse(y, root)) < 0;
  return nx != ny;
}

bool CoxeterGroup::weak_leq(const Elt& p, const Elt& g) const {
  if (p.len > g.len) return false;
  for (const auto& beta : inversion_roots(p)) {
    if (root_sign(act_inverse(g, beta)) > 0) return false;
  }
  return true;
}

std::vector<Elt> CoxeterGroup::lower_set(const Elt& g) const {
  std::vector<Elt> out{g};
  std::unordered_set<Elt, EltHash> seen{g};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s = 0; s < rank(); ++s) {
      if (!is_descent(out[i], s)) continue;
      Elt p = multiply(out[i], s);
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  return out;
}

JoinResult CoxeterGroup::join(const Elt& u, const Elt& v, int radius) const {
  if (radius < std::max(u.len, v.len)) {
    throw std::invalid_argument("join radius smaller than the arguments' lengths");
  }
  const Elt& lo = u.len >= v.len ? u : v;
  const Elt& other = u.len >= v.len ? v : u;
  std::vector<RootVec> needed = inversion_roots(other);
  auto above_other = [&](const Elt& w) {
    for (const auto& beta : needed)
      if (root_sign(act_inverse(w, beta)) > 0) return false;
    return true;
  };
  // Walk up from the longer argument one length at a time; the first level
  // holding an upper bound holds exactly the join.
  std::vector<Elt> level{lo};
  std::unordered_set<Elt, EltHash> seen{lo};
  for (int len = lo.len; len <= radius; ++len) {
    std::vector<Elt> hits;
    for (const auto& w : level)
      if (above_other(w)) hits.push_back(w);
    if (!hits.empty()) {
      if (hits.size() > 1) {
        throw std::logic_error("two minimal common upper bounds of the same length");
      }
      return JoinResult{hits.front(), radius};
    }
    if (len == radius) break;
    std::vector<Elt> next;
    for (const auto& w : level) {
      for (int s = 0; s < rank(); ++s) {
        if (is_descent(w, s)) continue;
        Elt ws = multiply(w, s);
        if (seen.insert(ws).second) next.push_back(std::move(ws));
      }
    }
    level = std::move(next);
  }
  return JoinResult{std::nullopt, radius};
}

ElementBall::ElementBall(const CoxeterGroup& group, int radius, std::size_t cap)
    : radius_(radius), rank_(group.rank()) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  elements_.push_back(group.identity());
  index_.emplace(elements_.back(), 0);
  right_.assign(rank_, -1);
  level_end_.push_back(1);
  std::size_t begin = 0;
  for (int len = 0; len < radius; ++len) {
    std::size_t end = elements_.size();
    std::vector<Elt> next;
    std::unordered_map<Elt, int, EltHash> next_index;
    std::vector<std::tuple<int, int, int>> edges;  // (parent id, s, temp index)
    for (std::size_t id = begin; id < end; ++id) {
      const Elt& w = elements_[id];
      for (int s = 0; s < rank_; ++s) {
        if (group.is_descent(w, s)) continue;
        Elt ws = group.multiply(w, s);
        auto [it, inserted] = next_index.emplace(ws, static_cast<int>(next.size()));
        if (inserted) next.push_back(std::move(ws));
        edges.emplace_back(static_cast<int>(id), s, it->second);
      }
    }
    if (elements_.size() + next.size() > cap) {
      throw CapExceeded("ball of radius " + std::to_string(radius) + " exceeds " +
                        std::to_string(cap) + " elements");
    }
    std::vector<int> order(next.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return next[a].word < next[b].word; });
    std::vector<int> final_id(next.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      final_id[order[k]] = static_cast<int>(end + k);
    }
    right_.resize((end + next.size()) * rank_, -1);
    for (int k : order) {
      index_.emplace(next[k], final_id[k]);
      elements_.push_back(std::move(next[k]));
    }
    for (auto [parent, s, tmp] : edges) {
      right_[parent * rank_ + s] = final_id[tmp];
      right_[final_id[tmp] * rank_ + s] = parent;
    }
    level_end_.push_back(elements_.size());
    begin = end;
    if (next.empty()) {
      // Finite group exhausted; remaining levels are empty.
      for (int l = len + 1; l < radius; ++l) level_end_.push_back(elements_.size());
      break;
    }
  }

  // N(ps) = N(p) + {p.a_s} whenever l(ps) > l(p).
  std::vector<std::pair<int, int>> via(elements_.size(), {-1, -1});
  for (std::size_t id = 1; id < elements_.size(); ++id) {
    for (int s = 0; s < rank_; ++s) {
      int p = right(static_cast<int>(id), s);
      if (p < 0 || elements_[p].len >= elements_[id].len) continue;
      RootVec root = elements_[p].mat.column(s);
      auto [it, inserted] = wall_index_.emplace(root, static_cast<int>(walls_.size()));
      if (inserted) walls_.push_back(std::move(root));
      if (via[id].first < 0) via[id] = {p, it->second};
    }
  }
  inv_.assign(elements_.size(), boost::dynamic_bitset<>(walls_.size()));
  for (std::size_t id = 1; id < elements_.size(); ++id) {
    inv_[id] = inv_[via[id].first];
    inv_[id].set(via[id].second);
  }
}

std::optional<int> ElementBall::wall_index(const RootVec& root) const {
  auto it = wall_index_.find(root);
  if (it == wall_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ElementBall::find(const Elt& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ElementBall::count_up_to(int r) const {
  if (r < 0) return 0;
  if (r >= static_cast<int>(level_end_.size())) return elements_.size();
  return level_end_[r];
}

std::vector<int> ElementBall::down_set(int id) const {
  std::unordered_set<int> seen{id};
  std::vector<int> stack{id}, out;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (int s = 0; s < rank_; ++s) {
      int y = right(x, s);
      if (y >= 0 && elements_[y].len < elements_[x].len && seen.insert(y).second) {
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ElementBall::up_set(int id) const {
  std::unordered_set<int> seen{id};
  std::vector<int> stack{id}, out;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (int s = 0; s < rank_; ++s) {
      int y = right(x, s);
      if (y >= 0 && elements_[y].len > elements_[x].len && seen.insert(y).second) {
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coxshadow
