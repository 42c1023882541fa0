#include "coxshadow/conetype.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "coxshadow/shi.hpp"

namespace coxshadow {

namespace {

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

std::string show(const Elt& g) { return format_word(g.word); }

}  // namespace

int cone_state(const Dfa& minimal, const Elt& g) {
  auto q = run(minimal, reversed(g.word));
  if (!q) throw std::logic_error("reduced word rejected by the automaton: " + show(g));
  return *q;
}

Elt gate(const CoxeterGroup& group, const Dfa& minimal, const Elt& g) {
  Elt h = g;
  int q = cone_state(minimal, h);
  for (bool moved = true; moved;) {
    moved = false;
    for (int s = 0; s < group.rank(); ++s) {
      if (!group.is_descent(h, s)) continue;
      Elt hs = group.multiply(h, s);
      if (cone_state(minimal, hs) == q) {
        h = std::move(hs);
        moved = true;
        break;
      }
    }
  }
  return h;
}

std::vector<Elt> gates(const CoxeterGroup& group, const Dfa& minimal) {
  std::vector<Elt> out;
  for (const auto& w : shortest_words(minimal)) {
    out.push_back(gate(group, minimal, group.from_word(reversed(w))));
  }
  return out;
}

std::vector<RootVec> boundary_roots(const CoxeterGroup& group, const ElementBall& ball, int x,
                                    int h_radius) {
  const auto& nx = ball.inversions(x);
  auto in_T = [&](int id) { return !nx.intersects(ball.inversions(id)); };
  std::unordered_set<RootVec, RootVecHash> seen;
  std::vector<RootVec> out;
  for (std::size_t id = 0; id < ball.count_up_to(h_radius); ++id) {
    int h = static_cast<int>(id);
    if (!in_T(h)) continue;
    const Elt& he = ball.at(h);
    for (int s = 0; s < group.rank(); ++s) {
      RootVec root = he.mat.column(s);
      if (group.root_sign(root) < 0) root = group.negate(root);
      int y = ball.right(h, s);
      bool y_in;
      if (y >= 0) {
        y_in = in_T(y);
      } else {
        // hs leaves the ball upwards, so N(hs) = N(h) + {h.a_s}.
        auto w = ball.wall_index(root);
        y_in = !(w && nx.test(*w));
      }
      if (!y_in && seen.insert(root).second) out.push_back(std::move(root));
    }
  }
  return out;
}

std::vector<Wall> boundary_walls(const CoxeterGroup& group, const Elt& g, int R) {
  if (R < g.len + 2) throw std::invalid_argument("boundary_walls needs R >= l(g) + 2");
  ElementBall ball(group, R);
  auto x = ball.find(group.inverse(g));
  std::vector<Wall> out;
  for (const auto& root : boundary_roots(group, ball, *x, R - g.len)) {
    out.push_back(group.wall_from_root(root));
  }
  return out;
}

std::vector<int> cone_gates(const Dfa& minimal, const ElementBall& ball) {
  std::vector<int> state(ball.size()), out(ball.size());
  for (std::size_t id = 0; id < ball.size(); ++id) {
    state[id] = cone_state(minimal, ball.at(static_cast<int>(id)));
  }
  const int n = minimal.alphabet();
  for (std::size_t id = 0; id < ball.size(); ++id) {
    out[id] = static_cast<int>(id);
    for (int s = 0; s < n; ++s) {
      int down = ball.right(static_cast<int>(id), s);
      if (down < 0 || ball.at(down).len > ball.at(static_cast<int>(id)).len) continue;
      if (state[down] == state[id]) {
        out[id] = out[down];
        break;
      }
    }
  }
  return out;
}

Report verify_cone_theorems(const CoxeterGroup& group, const Dfa& minimal,
                            const ElementBall& ball) {
  Report report("cone");
  const int R = ball.radius();
  const int n = group.rank();
  std::vector<int> state(ball.size());
  for (std::size_t id = 0; id < ball.size(); ++id) {
    state[id] = cone_state(minimal, ball.at(static_cast<int>(id)));
  }
  std::vector<int> mu = cone_gates(minimal, ball);
  std::vector<Elt> gamma = gates(group, minimal);

  std::map<int, std::vector<int>> parts;
  for (std::size_t id = 0; id < ball.size(); ++id) parts[state[id]].push_back(static_cast<int>(id));

  {
    std::vector<std::string> bad;
    for (const auto& [q, ids] : parts) {
      int x = ids.front();
      std::string key = "state " + std::to_string(q);
      if (ids.size() > 1 && ball.at(ids[1]).len == ball.at(x).len) {
        bad.push_back(key + ": two shortest elements " + show(ball.at(x)) + ", " +
                      show(ball.at(ids[1])));
        continue;
      }
      for (int y : ids) {
        if (ball.at(y).len <= R - 2 && !ball.inversions(x).is_subset_of(ball.inversions(y))) {
          bad.push_back(key + ": " + show(ball.at(x)) + " not below " + show(ball.at(y)));
        }
        if (mu[y] != x) bad.push_back(key + ": greedy gate of " + show(ball.at(y)) + " differs");
      }
      if (!(gamma[q] == ball.at(x))) bad.push_back(key + ": gate differs from " + show(ball.at(x)));
    }
    report.add(make_check("smallest_element", parts.size(), bad.size(), bad, 0,
                          std::to_string(parts.size()) + " parts meet the ball"));
  }

  {
    std::vector<std::string> bad;
    std::unordered_set<Elt, EltHash> in_gamma(gamma.begin(), gamma.end());
    if (!in_gamma.count(group.identity())) bad.push_back("id is not a gate");
    report.add(make_check("gates_contain_id", 1, bad.size(), bad));
  }

  report.merge(verify_shadow(group, gamma, ball, "shadow_gates", "suffix_closure_imported"));

  {
    std::size_t pairs = 0, vertices = 0;
    std::vector<std::string> bad;
    std::size_t inner = ball.count_up_to(R - 2);
    for (const auto& [q, ids] : parts) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (static_cast<std::size_t>(ids[i]) >= inner) break;
        const Elt& x = ball.at(ids[i]);
        Elt x_inv = group.inverse(x);
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          if (static_cast<std::size_t>(ids[j]) >= inner) break;
          ++pairs;
          const Elt& y = ball.at(ids[j]);
          for (const auto& p : group.lower_set(group.product(x_inv, y))) {
            ++vertices;
            Elt f = group.product(x, p);
            if (cone_state(minimal, f) != q) {
              bad.push_back(show(x) + " .. " + show(y) + " passes " + show(f));
            }
          }
        }
      }
    }
    report.add(make_check("convexity", pairs, bad.size(), bad, 0,
                          std::to_string(vertices) + " geodesic vertices checked"));
  }

  {
    std::vector<std::string> bad;
    for (std::size_t id = 0; id < ball.size(); ++id) {
      const Elt& g = ball.at(static_cast<int>(id));
      Elt m = gate(group, minimal, g);
      if (!(m == ball.at(mu[id]))) bad.push_back(show(g) + ": greedy gates disagree");
      if (!(gate(group, minimal, m) == m)) bad.push_back(show(g) + ": gate not idempotent");
      if (!group.weak_leq(m, g)) bad.push_back(show(g) + ": gate not below");
    }
    report.add(make_check("gate_idempotent", ball.size(), bad.size(), bad));
  }

  {
    std::size_t pairs = 0;
    std::vector<std::string> bad;
    for (std::size_t h = 0; h < ball.size(); ++h) {
      for (int g : ball.down_set(static_cast<int>(h))) {
        ++pairs;
        if (!ball.inversions(mu[g]).is_subset_of(ball.inversions(mu[h]))) {
          bad.push_back("g=" + show(ball.at(g)) + " h=" + show(ball.at(static_cast<int>(h))));
        }
      }
    }
    report.add(make_check("gate_monotone", pairs, bad.size(), bad));
  }

  {
    // g = mu(g) iff every descent wall of g lies in the boundary of T(g^-1).
    // A truncated boundary can only miss walls, so only one direction can
    // fail outright.
    std::size_t checked = 0, unseen = 0;
    std::vector<std::string> bad;
    for (std::size_t id = 0; id < ball.count_up_to(R / 2); ++id) {
      int x = static_cast<int>(id);
      const Elt& g = ball.at(x);
      auto roots = boundary_roots(group, ball, x, R - g.len);
      std::unordered_set<RootVec, RootVecHash> boundary(roots.begin(), roots.end());
      bool all_in = true;
      for (int s = 0; s < n; ++s) {
        if (group.is_descent(g, s) && !boundary.count(group.negate(g.mat.column(s)))) {
          all_in = false;
        }
      }
      bool fix = mu[x] == x;
      ++checked;
      if (all_in && !fix) bad.push_back(show(g) + ": boundary descents but not a gate");
      if (fix && !all_in) ++unseen;
    }
    report.add(make_check("boundary_stop_rule", checked, bad.size(), bad, 0,
                          std::to_string(unseen) +
                              " gates with a descent wall outside the truncated boundary"));
  }
  return report;
}

Report verify_cone_theorems(const CoxeterGroup& group, const Dfa& minimal, int R) {
  ElementBall ball(group, R);
  return verify_cone_theorems(group, minimal, ball);
}

Report verify_hnw(const CoxeterGroup& group, const Dfa& bh, const Dfa& minimal) {
  Report report("hnw");
  std::vector<Elt> gamma = gates(group, minimal);
  std::unordered_set<Elt, EltHash> distinct(gamma.begin(), gamma.end());
  std::vector<std::string> bad;
  if (distinct.size() != static_cast<std::size_t>(minimal.size())) {
    bad.push_back("|gates| = " + std::to_string(distinct.size()) + ", states = " +
                  std::to_string(minimal.size()));
  }
  for (std::size_t q = 0; q < gamma.size(); ++q) {
    if (cone_state(minimal, gamma[q]) != static_cast<int>(q)) {
      bad.push_back("gate " + show(gamma[q]) + " maps to another state");
    }
  }
  report.add(make_check("gates_biject_states", gamma.size(), bad.size(), bad, 0,
                        std::to_string(distinct.size()) + " gates, " +
                            std::to_string(minimal.size()) + " states"));

  std::vector<std::string> mbad;
  if (!equivalent(bh, minimal)) mbad.push_back("languages differ");
  if (!(minimize(minimal) == minimal)) mbad.push_back("minimize not idempotent");
  if (minimal.size() > bh.size()) mbad.push_back("minimization grew the automaton");
  report.add(make_check("minimal_automaton", 3, mbad.size(), mbad));
  return report;
}

}  // namespace coxshadow
