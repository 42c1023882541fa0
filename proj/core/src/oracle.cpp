#include "coxshadow/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace coxshadow {

namespace {

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  const int n = a.size();
  std::vector<FieldElem> out(n * n, f.zero());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (!b(k, j).is_zero()) out[i * n + j] = f.add_mul(out[i * n + j], a(i, k), b(k, j));
      }
    }
  }
  return Matrix(n, std::move(out));
}

Matrix identity_matrix(const Field& f, int n) {
  std::vector<FieldElem> e(n * n, f.zero());
  for (int i = 0; i < n; ++i) e[i * n + i] = f.one();
  return Matrix(n, std::move(e));
}

std::vector<int> canonical_classes(const std::vector<std::vector<bool>>& keys) {
  std::map<std::vector<bool>, int> ids;
  std::vector<int> out;
  for (const auto& k : keys) out.push_back(ids.emplace(k, static_cast<int>(ids.size())).first->second);
  return out;
}

}  // namespace

OracleBall build_ball(const CoxeterSystem& sys, int R, std::size_t cap) {
  if (R < 0) throw std::invalid_argument("ball radius must be >= 0");
  OracleBall b(sys, Field(Field::conductor_for(sys)));
  const Field& f = b.field_;
  const int n = sys.rank();
  b.radius_ = R;
  b.form2_.assign(n * n, f.zero());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) b.form2_[i * n + j] = f.from_int(2);
      else if (sys.infinite_bond(i, j)) b.form2_[i * n + j] = f.from_int(-2);
      else b.form2_[i * n + j] = f.neg(f.two_cos_pi_over(sys.bond(i, j)));
    }
  }
  std::vector<Matrix> gens;
  for (int s = 0; s < n; ++s) {
    Matrix m = identity_matrix(f, n);
    for (int j = 0; j < n; ++j) m(s, j) = f.sub(m(s, j), b.form2_[s * n + j]);
    gens.push_back(std::move(m));
  }

  auto add = [&](Matrix m, Matrix inv, int len, int parent, int gen) {
    b.index_.emplace(m, static_cast<int>(b.mat_.size()));
    b.mat_.push_back(std::move(m));
    b.inv_mat_.push_back(std::move(inv));
    b.len_.push_back(len);
    b.parent_.push_back(parent);
    b.parent_gen_.push_back(gen);
    b.nbr_.resize(b.mat_.size() * n, -1);
    b.edge_wall_.resize(b.mat_.size() * n, -1);
  };
  add(identity_matrix(f, n), identity_matrix(f, n), 0, -1, -1);
  b.level_end_.push_back(1);
  std::size_t begin = 0;
  for (int len = 0; len < R; ++len) {
    std::size_t end = b.mat_.size();
    for (std::size_t id = begin; id < end; ++id) {
      for (int s = 0; s < n; ++s) {
        if (b.nbr_[id * n + s] >= 0) continue;  // the edge down, already linked
        Matrix m = multiply(f, b.mat_[id], gens[s]);
        int y;
        auto it = b.index_.find(m);
        if (it != b.index_.end()) {
          y = it->second;
        } else {
          if (b.mat_.size() >= cap) {
            throw CapExceeded("oracle ball exceeds " + std::to_string(cap) + " elements");
          }
          y = static_cast<int>(b.mat_.size());
          add(m, multiply(f, gens[s], b.inv_mat_[id]), len + 1, static_cast<int>(id), s);
        }
        b.nbr_[id * n + s] = y;
        b.nbr_[y * n + s] = static_cast<int>(id);
        Matrix refl = multiply(f, b.mat_[y], b.inv_mat_[id]);
        auto [wit, inserted] = b.wall_index_.emplace(refl, static_cast<int>(b.reflections_.size()));
        if (inserted) {
          b.reflections_.push_back(std::move(refl));
          b.roots_.push_back(b.mat_[id].column(s));
        }
        b.edge_wall_[id * n + s] = wit->second;
        b.edge_wall_[y * n + s] = wit->second;
      }
    }
    b.level_end_.push_back(b.mat_.size());
    begin = end;
    if (begin == b.mat_.size()) break;
  }
  b.inversions_.assign(b.mat_.size(), boost::dynamic_bitset<>(b.reflections_.size()));
  for (std::size_t id = 1; id < b.mat_.size(); ++id) {
    int p = b.parent_[id];
    b.inversions_[id] = b.inversions_[p];
    b.inversions_[id].set(b.edge_wall_[p * n + b.parent_gen_[id]]);
  }
  return b;
}

Word OracleBall::word(int id) const {
  Word w;
  for (; parent_[id] >= 0; id = parent_[id]) w.push_back(parent_gen_[id]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<int> OracleBall::find(const Matrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int OracleBall::find_word(const Word& w) const {
  int id = 0;
  for (int s : w) {
    if (s < 0 || s >= rank()) throw std::invalid_argument("generator out of range");
    id = neighbour(id, s);
    if (id < 0) throw InconclusiveError("word leaves the oracle ball");
  }
  return id;
}

std::size_t OracleBall::count_up_to(int r) const {
  if (r < 0) return 0;
  if (r >= static_cast<int>(level_end_.size())) return size();
  return level_end_[r];
}

std::optional<int> OracleBall::wall_of_reflection(const Matrix& r) const {
  auto it = wall_index_.find(r);
  if (it == wall_index_.end()) return std::nullopt;
  return it->second;
}

bool OracleBall::below(int p, int g) const {
  if (len_[p] > len_[g]) return false;
  std::unordered_set<int> seen{g};
  std::vector<int> stack{g};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == p) return true;
    if (len_[x] == len_[p]) continue;
    for (int s = 0; s < rank(); ++s) {
      int y = neighbour(x, s);
      if (y >= 0 && len_[y] < len_[x] && seen.insert(y).second) stack.push_back(y);
    }
  }
  return false;
}

std::vector<int> OracleBall::down_set(int g) const {
  std::vector<int> out{g};
  std::unordered_set<int> seen{g};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s = 0; s < rank(); ++s) {
      int y = neighbour(out[i], s);
      if (y >= 0 && len_[y] < len_[out[i]] && seen.insert(y).second) out.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldElem OracleBall::inner2(const RootVec& a, const RootVec& b) const {
  const int n = rank();
  FieldElem acc = field_.zero();
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      acc = field_.add_mul(acc, field_.mul(a[i], b[j]), form2_[i * n + j]);
    }
  }
  return acc;
}

bool oracle_reduced(const OracleBall& ball, const Word& w) {
  if (static_cast<int>(w.size()) > ball.radius()) {
    throw InconclusiveError("word longer than the oracle radius");
  }
  return ball.length(ball.find_word(w)) == static_cast<int>(w.size());
}

int oracle_length(const OracleBall& ball, const Matrix& g) {
  auto id = ball.find(g);
  if (!id) throw InconclusiveError("element outside the oracle ball");
  return ball.length(*id);
}

ConePartition oracle_cone_partition(const OracleBall& ball, int margin) {
  if (margin < 1 || margin > ball.radius()) throw std::invalid_argument("bad cone margin");
  const std::size_t inner = ball.count_up_to(ball.radius() - margin);
  const std::size_t probe = ball.count_up_to(margin);
  const std::size_t probe_prev = ball.count_up_to(margin - 1);
  std::vector<std::vector<bool>> keys(inner), keys_prev(inner);
  for (std::size_t g = 0; g < inner; ++g) {
    keys[g].resize(probe);
    for (std::size_t x = 0; x < probe; ++x) {
      Matrix gx = multiply(ball.field(), ball.inverse_matrix(static_cast<int>(g)),
                           ball.matrix(static_cast<int>(x)));
      int l = oracle_length(ball, gx);
      keys[g][x] = l == ball.length(static_cast<int>(g)) + ball.length(static_cast<int>(x));
    }
    keys_prev[g].assign(keys[g].begin(), keys[g].begin() + probe_prev);
  }
  ConePartition out;
  out.margin = margin;
  std::vector<int> cls = canonical_classes(keys);
  out.stable = cls == canonical_classes(keys_prev);
  out.classes = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  out.class_of.assign(ball.size(), -1);
  std::copy(cls.begin(), cls.end(), out.class_of.begin());
  return out;
}

std::vector<int> oracle_wall_partition(const OracleBall& ball, const std::vector<int>& walls) {
  boost::dynamic_bitset<> mask(ball.wall_count());
  for (int w : walls) mask.set(w);
  std::map<boost::dynamic_bitset<>, int> ids;
  std::vector<int> out;
  for (std::size_t g = 0; g < ball.size(); ++g) {
    auto key = ball.inversions(static_cast<int>(g)) & mask;
    out.push_back(ids.emplace(key, static_cast<int>(ids.size())).first->second);
  }
  return out;
}

PartMinimum oracle_part_minimum(const OracleBall& ball, const std::vector<int>& members) {
  if (members.empty()) throw std::invalid_argument("empty part");
  PartMinimum out;
  int cand = members.front();
  for (int x : members)
    if (ball.length(x) < ball.length(cand)) cand = x;
  for (int x : members) {
    if (x != cand && ball.length(x) == ball.length(cand)) {
      out.witnesses = {cand, x};
      return out;
    }
  }
  for (int x : members) {
    if (!ball.below(cand, x)) {
      out.witnesses = {cand, x};
      return out;
    }
  }
  out.minimum = cand;
  return out;
}

std::vector<int> oracle_wall_depths(const OracleBall& ball) {
  std::vector<int> depth(ball.wall_count(), -1);
  for (std::size_t x = 0; x < ball.size(); ++x) {
    for (int s = 0; s < ball.rank(); ++s) {
      int y = ball.neighbour(static_cast<int>(x), s);
      if (y < 0 || ball.length(y) < ball.length(static_cast<int>(x))) continue;
      int w = ball.edge_wall(static_cast<int>(x), s);
      int d = ball.length(static_cast<int>(x)) + 1;
      if (depth[w] < 0 || d < depth[w]) depth[w] = d;
    }
  }
  return depth;
}

namespace {

// For each wall, the walls separating all of its dual edges (within
// edge_radius) from id.
std::vector<boost::dynamic_bitset<>> separating_walls(const OracleBall& ball, int edge_radius) {
  std::vector<boost::dynamic_bitset<>> acc(ball.wall_count());
  std::vector<bool> seen(ball.wall_count(), false);
  for (std::size_t x = 0; x < ball.count_up_to(edge_radius - 1); ++x) {
    for (int s = 0; s < ball.rank(); ++s) {
      int y = ball.neighbour(static_cast<int>(x), s);
      if (y < 0 || ball.length(y) < ball.length(static_cast<int>(x))) continue;
      int w = ball.edge_wall(static_cast<int>(x), s);
      if (!seen[w]) {
        acc[w] = ball.inversions(static_cast<int>(x));
        seen[w] = true;
      } else {
        acc[w] &= ball.inversions(static_cast<int>(x));
      }
    }
  }
  return acc;
}

}  // namespace

std::vector<int> oracle_elementary_walls(const OracleBall& ball, int depth, int edge_radius) {
  int er = edge_radius < 0 ? ball.radius() : std::min(edge_radius, ball.radius());
  if (er < depth) throw std::invalid_argument("edge radius below the requested depth");
  auto acc = separating_walls(ball, er);
  auto depths = oracle_wall_depths(ball);
  std::vector<int> out;
  for (std::size_t w = 0; w < ball.wall_count(); ++w) {
    if (depths[w] <= depth && acc[w].size() > 0 && acc[w].none()) out.push_back(static_cast<int>(w));
  }
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) { return depths[a] < depths[b]; });
  return out;
}

std::vector<RootVec> oracle_small_roots(const CoxeterSystem& sys, int depth, std::size_t cap) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  OracleBall ball = build_ball(sys, 2 * depth + 9, cap);
  auto near = oracle_elementary_walls(ball, depth, 2 * depth + 5);
  auto far = oracle_elementary_walls(ball, depth);
  if (near != far) {
    throw InconclusiveError("elementary walls up to depth " + std::to_string(depth) +
                            " change when the ball grows");
  }
  std::vector<RootVec> out;
  for (int w : far) out.push_back(ball.wall_root(w));
  return out;
}

bool oracle_dominates(const OracleBall& ball, int beta, int alpha) {
  if (beta == alpha) return false;
  bool any = false;
  for (std::size_t x = 0; x < ball.size(); ++x) {
    for (int s = 0; s < ball.rank(); ++s) {
      int y = ball.neighbour(static_cast<int>(x), s);
      if (y < 0 || ball.length(y) < ball.length(static_cast<int>(x))) continue;
      if (ball.edge_wall(static_cast<int>(x), s) != beta) continue;
      any = true;
      if (!ball.inversions(static_cast<int>(x)).test(alpha)) return false;
    }
  }
  return any;
}

bool oracle_walls_meet(const OracleBall& ball, int w, int u) {
  if (w == u) return false;
  const Field& f = ball.field();
  FieldElem k = ball.inner2(ball.wall_root(w), ball.wall_root(u));
  return f.sign(f.sub(k, f.from_int(2))) < 0 && f.sign(f.add(k, f.from_int(2))) > 0;
}

Report verify_bipodality(const OracleBall& ball) {
  Report report("bipodality");
  const CoxeterSystem& sys = ball.system();
  const int n = ball.rank();
  std::unordered_map<int, boost::dynamic_bitset<>> meets_cache;
  auto meets = [&](int w) -> const boost::dynamic_bitset<>& {
    auto it = meets_cache.find(w);
    if (it != meets_cache.end()) return it->second;
    boost::dynamic_bitset<> bits(ball.wall_count());
    for (std::size_t u = 0; u < ball.wall_count(); ++u)
      if (oracle_walls_meet(ball, w, static_cast<int>(u))) bits.set(u);
    return meets_cache.emplace(w, std::move(bits)).first->second;
  };
  auto show = [&](int id) { return format_word(ball.word(id)); };

  std::set<std::pair<int, int>> seen;
  std::size_t pairs = 0, skipped = 0, instances = 0, hypotheses = 0;
  std::vector<std::string> bad;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) {
        if (sys.infinite_bond(s, t) || sys.bond(s, t) < 3) continue;
        const int m = sys.bond(s, t);
        int r = ball.edge_wall(static_cast<int>(v), s), q = ball.edge_wall(static_cast<int>(v), t);
        if (r < 0 || q < 0) {
          ++skipped;
          continue;
        }
        if (!seen.insert(std::minmax(r, q)).second) continue;
        std::vector<int> residue{static_cast<int>(v)};
        std::unordered_set<int> in_res{static_cast<int>(v)};
        bool complete = true;
        for (std::size_t i = 0; i < residue.size(); ++i) {
          for (int u : {s, t}) {
            int z = ball.neighbour(residue[i], u);
            if (z < 0) complete = false;
            else if (in_res.insert(z).second) residue.push_back(z);
          }
        }
        if (!complete || static_cast<int>(residue.size()) != 2 * m) {
          ++skipped;
          continue;
        }
        ++pairs;
        std::map<int, int> adjacent;  // residue wall -> a residue vertex on it
        std::vector<int> apexes;
        for (int y : residue) {
          int ws = ball.edge_wall(y, s), wt = ball.edge_wall(y, t);
          adjacent.emplace(ws, y);
          adjacent.emplace(wt, y);
          if (std::minmax(ws, wt) == std::minmax(r, q)) apexes.push_back(y);
        }
        auto separated = [&](int g, int w) {
          auto d = ball.inversions(g) ^ ball.inversions(adjacent.at(w));
          d -= meets(w);
          d.reset(w);
          return d.any();
        };
        for (int apex : apexes) {
          const auto& na = ball.inversions(apex);
          for (std::size_t g = 0; g < ball.size(); ++g) {
            const auto& ng = ball.inversions(static_cast<int>(g));
            if (ng.test(r) != na.test(r) || ng.test(q) != na.test(q)) continue;
            if (!separated(static_cast<int>(g), r) && !separated(static_cast<int>(g), q)) continue;
            ++hypotheses;
            for (const auto& [w, y] : adjacent) {
              if (w == r || w == q) continue;
              ++instances;
              if (!separated(static_cast<int>(g), w)) {
                bad.push_back("g=" + show(static_cast<int>(g)) + " residue at " +
                              show(static_cast<int>(v)) + " wall through " + show(y));
              }
            }
          }
        }
      }
    }
  }
  report.add(make_check("bipodality", instances, bad.size(), bad, 0,
                        std::to_string(pairs) + " sharp-angled pairs, " +
                            std::to_string(hypotheses) + " separated domain elements, " +
                            std::to_string(skipped) + " residues skipped at the ball boundary"));
  return report;
}

Report verify_bipodality(const CoxeterSystem& sys, int R, std::size_t cap) {
  return verify_bipodality(build_ball(sys, R, cap));
}

}  // namespace coxshadow
