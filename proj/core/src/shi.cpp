#include "coxshadow/shi.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace coxshadow {

namespace {

// Index in Sigma of the wall between g and gs, for a descent s; -1 if that
// wall is not elementary.
int descent_wall_index(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& g, int s) {
  auto idx = sigma.index_of(group.negate(g.mat.column(s)));
  return idx ? *idx : -1;
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

std::string show(const Elt& g) { return format_word(g.word); }

}  // namespace

ShiSignature shi_signature(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& g) {
  ShiSignature sig(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (group.root_sign(group.act_inverse(g, sigma[i])) < 0) sig.set(i);
  }
  return sig;
}

std::vector<int> signature_members(const ShiSignature& sig) {
  std::vector<int> out;
  for (auto i = sig.find_first(); i != ShiSignature::npos; i = sig.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string signature_string(const ShiSignature& sig) {
  std::string out = "{";
  bool first = true;
  for (int i : signature_members(sig)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

Elt shi_minimum(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& g) {
  Elt h = g;
  for (bool moved = true; moved;) {
    moved = false;
    for (int s = 0; s < group.rank(); ++s) {
      if (group.is_descent(h, s) && descent_wall_index(group, sigma, h, s) < 0) {
        h = group.multiply(h, s);
        moved = true;
        break;
      }
    }
  }
  return h;
}

bool is_low(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& h) {
  for (int s = 0; s < group.rank(); ++s) {
    if (group.is_descent(h, s) && descent_wall_index(group, sigma, h, s) < 0) return false;
  }
  return true;
}

std::vector<Elt> enumerate_M(const CoxeterGroup& group, const SmallRoots& sigma, const Dfa& bh) {
  std::vector<Elt> out;
  for (const auto& w : shortest_words(bh)) {
    out.push_back(shi_minimum(group, sigma, group.from_word(reversed(w))));
  }
  return out;
}

std::vector<int> shi_minima(const CoxeterGroup& group, const SmallRoots& sigma,
                            const ElementBall& ball) {
  std::vector<int> out(ball.size());
  for (std::size_t id = 0; id < ball.size(); ++id) {
    out[id] = static_cast<int>(id);
    const Elt& g = ball.at(static_cast<int>(id));
    for (int s = 0; s < group.rank(); ++s) {
      int down = ball.right(static_cast<int>(id), s);
      if (down < 0 || ball.at(down).len > g.len) continue;
      if (descent_wall_index(group, sigma, g, s) < 0) {
        out[id] = out[down];
        break;
      }
    }
  }
  return out;
}

std::vector<PartRecord> shi_parts(const CoxeterGroup& group, const SmallRoots& sigma,
                                  const ElementBall& ball) {
  std::vector<PartRecord> parts;
  std::unordered_map<std::string, std::size_t> by_key;
  for (std::size_t id = 0; id < ball.size(); ++id) {
    const Elt& g = ball.at(static_cast<int>(id));
    std::string key = signature_string(shi_signature(group, sigma, g));
    auto [it, inserted] = by_key.emplace(key, parts.size());
    if (inserted) parts.push_back({key, shi_minimum(group, sigma, g), {}});
    parts[it->second].members.push_back(static_cast<int>(id));
  }
  return parts;
}

Report verify_shadow(const CoxeterGroup& group, const std::vector<Elt>& B,
                     const ElementBall& ball, const std::string& title,
                     const std::string& suffix_label) {
  int longest = 0;
  for (const auto& b : B) longest = std::max(longest, b.len);
  if (longest > ball.radius()) {
    ElementBall wider(group, longest);
    return verify_shadow(group, B, wider, title, suffix_label);
  }
  Report report(title);
  std::unordered_set<Elt, EltHash> members(B.begin(), B.end());

  std::vector<std::string> missing;
  for (int s = 0; s < group.rank(); ++s) {
    if (!members.count(group.generator(s))) missing.push_back("s" + std::to_string(s + 1));
  }
  report.add(make_check("contains_generators", group.rank(), missing.size(), missing));

  std::size_t suffix_count = 0;
  std::vector<std::string> suffix_bad;
  for (const auto& h : B) {
    for (const auto& p : group.lower_set(h)) {
      ++suffix_count;
      Elt x = group.product(group.inverse(p), h);
      if (!members.count(x)) {
        suffix_bad.push_back("h=" + show(h) + " g=" + show(p) + " g^-1h=" + show(x));
      }
    }
  }
  report.add(make_check(suffix_label, suffix_count, suffix_bad.size(), suffix_bad));

  // Joins through up-cones in the ball: the least id in the common cone is
  // the shortest common upper bound, and it must lie below the whole cone.
  std::vector<int> ids;
  std::size_t outside = 0;
  for (const auto& b : B) {
    if (auto id = ball.find(b)) ids.push_back(*id);
    else ++outside;
  }
  std::unordered_map<int, boost::dynamic_bitset<>> cones;
  auto cone = [&](int id) -> const boost::dynamic_bitset<>& {
    auto it = cones.find(id);
    if (it != cones.end()) return it->second;
    boost::dynamic_bitset<> bits(ball.size());
    for (int x : ball.up_set(id)) bits.set(x);
    return cones.emplace(id, std::move(bits)).first->second;
  };
  std::size_t joins = 0, unbounded = 0;
  std::vector<std::string> join_bad;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      boost::dynamic_bitset<> common = cone(ids[i]) & cone(ids[j]);
      auto first = common.find_first();
      if (first == boost::dynamic_bitset<>::npos) {
        ++unbounded;
        continue;
      }
      ++joins;
      int top = static_cast<int>(first);
      const Elt& w = ball.at(top);
      std::string pair = show(ball.at(ids[i])) + " v " + show(ball.at(ids[j]));
      if (!common.is_subset_of(cone(top))) {
        join_bad.push_back(pair + ": no least upper bound, shortest is " + show(w));
      } else if (!members.count(w)) {
        join_bad.push_back(pair + " = " + show(w) + " not in set");
      }
    }
  }
  report.add(make_check("join_closure", joins, join_bad.size(), join_bad, outside,
                        std::to_string(unbounded) + " pairs without upper bound within radius " +
                            std::to_string(ball.radius()) +
                            (outside ? "; " + std::to_string(outside) + " elements outside ball"
                                     : "")));
  return report;
}

Report verify_shadow(const CoxeterGroup& group, const std::vector<Elt>& B, int radius) {
  ElementBall ball(group, radius);
  return verify_shadow(group, B, ball);
}

Report verify_monotone(const CoxeterGroup& group, const SmallRoots& sigma,
                       const ElementBall& ball) {
  Report report("monotone");
  std::vector<int> m = shi_minima(group, sigma, ball);
  std::size_t pairs = 0;
  std::vector<std::string> bad;
  for (std::size_t h = 0; h < ball.size(); ++h) {
    for (int g : ball.down_set(static_cast<int>(h))) {
      ++pairs;
      if (!ball.inversions(m[g]).is_subset_of(ball.inversions(m[h]))) {
        bad.push_back("g=" + show(ball.at(g)) + " h=" + show(ball.at(static_cast<int>(h))));
      }
    }
  }
  report.add(make_check("minimum_monotone", pairs, bad.size(), bad));
  return report;
}

Report verify_monotone(const CoxeterGroup& group, const SmallRoots& sigma, int radius) {
  ElementBall ball(group, radius);
  return verify_monotone(group, sigma, ball);
}

Report verify_shi(const CoxeterGroup& group, const SmallRoots& sigma, const Dfa& bh,
                  const ElementBall& ball) {
  Report report("shi");
  const Field& f = group.field();
  const int R = ball.radius();
  const int n = group.rank();

  {
    std::vector<std::string> bad;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      if (!(group.inner(sigma[a], sigma[a]) == f.one())) bad.push_back("norm " + std::to_string(a));
      for (int s = 0; s < n; ++s) {
        const Transition& t = sigma.table()[a][s];
        bool simple = sigma.simple(s) == static_cast<int>(a);
        if (simple != (t.kind == Transition::Kind::NegativeSimple)) {
          bad.push_back("negative-simple tag at " + std::to_string(a));
        }
        if (t.kind == Transition::Kind::SmallRoot) {
          const Transition& back = sigma.table()[t.target][s];
          if (back.kind != Transition::Kind::SmallRoot || back.target != static_cast<int>(a)) {
            bad.push_back("table not involutive at " + std::to_string(a));
          }
        }
      }
    }
    report.add(make_check("small_roots", sigma.size(), bad.size(), bad));
  }

  std::vector<ShiSignature> sig(ball.size());
  for (std::size_t id = 0; id < ball.size(); ++id) {
    sig[id] = shi_signature(group, sigma, ball.at(static_cast<int>(id)));
  }

  {
    std::size_t edges = 0;
    std::vector<std::string> bad;
    if (sig[0].any()) bad.push_back("signature of id is not empty");
    for (std::size_t id = 0; id < ball.size(); ++id) {
      for (int s = 0; s < n; ++s) {
        int y = ball.right(static_cast<int>(id), s);
        if (y <= static_cast<int>(id)) continue;
        ++edges;
        if ((sig[id] ^ sig[y]).count() > 1) bad.push_back(show(ball.at(y)));
      }
    }
    report.add(make_check("signature_edges", edges, bad.size(), bad));
  }

  std::vector<int> state(ball.size(), -1);
  {
    std::vector<std::string> bad;
    for (std::size_t id = 0; id < ball.size(); ++id) {
      const Elt& g = ball.at(static_cast<int>(id));
      auto q = run(bh, reversed(g.word));
      if (!q) {
        bad.push_back(show(g) + ": inverse word rejected");
        continue;
      }
      state[id] = *q;
      if (bh.meta(*q) != signature_members(sig[id])) {
        bad.push_back(show(g) + ": state " + std::to_string(*q) + " vs signature " +
                      signature_string(sig[id]));
      }
    }
    report.add(make_check("automaton_signature", ball.size(), bad.size(), bad));
  }

  std::vector<Elt> M = enumerate_M(group, sigma, bh);
  std::unordered_set<Elt, EltHash> in_M(M.begin(), M.end());
  {
    std::vector<std::string> bad;
    if (M.size() != static_cast<std::size_t>(bh.size()) || in_M.size() != M.size()) {
      bad.push_back("|M| = " + std::to_string(in_M.size()) + ", states = " +
                    std::to_string(bh.size()));
    }
    for (std::size_t q = 0; q < M.size(); ++q) {
      auto r = run(bh, reversed(M[q].word));
      if (!r || *r != static_cast<int>(q)) bad.push_back("M[" + std::to_string(q) + "] = " + show(M[q]));
    }
    report.add(make_check("M_matches_states", M.size(), bad.size(), bad));
  }

  std::vector<int> minima = shi_minima(group, sigma, ball);
  {
    std::map<std::string, std::vector<int>> parts;
    for (std::size_t id = 0; id < ball.size(); ++id) {
      parts[signature_string(sig[id])].push_back(static_cast<int>(id));
    }
    std::size_t undecided = 0;
    std::vector<std::string> bad;
    for (const auto& [key, ids] : parts) {
      int x = ids.front();  // ShortLex ids: the first is among the shortest
      int shortest = ball.at(x).len;
      if (ids.size() > 1 && ball.at(ids[1]).len == shortest) {
        bad.push_back(key + ": two shortest elements " + show(ball.at(x)) + ", " +
                      show(ball.at(ids[1])));
        continue;
      }
      for (int y : ids) {
        if (ball.at(y).len <= R - 2 && !ball.inversions(x).is_subset_of(ball.inversions(y))) {
          bad.push_back(key + ": " + show(ball.at(x)) + " not below " + show(ball.at(y)));
        }
        if (minima[y] != x) bad.push_back(key + ": greedy minimum of " + show(ball.at(y)) + " differs");
      }
      if (state[x] >= 0 && !(M[state[x]] == ball.at(x))) {
        bad.push_back(key + ": M entry differs from " + show(ball.at(x)));
      }
      if (shortest > R - 2) ++undecided;
    }
    report.add(make_check("smallest_element", parts.size(), bad.size(), bad, 0,
                          std::to_string(parts.size()) + " parts meet the ball" +
                              (undecided ? ", " + std::to_string(undecided) +
                                               " with minimum beyond radius-2"
                                         : "")));
  }

  {
    std::vector<std::string> bad;
    for (std::size_t id = 0; id < ball.size(); ++id) {
      const Elt& g = ball.at(static_cast<int>(id));
      bool fix = minima[id] == static_cast<int>(id);
      bool low = is_low(group, sigma, g);
      bool member = in_M.count(g) > 0;
      if (fix != low || low != member) bad.push_back(show(g));
    }
    report.add(make_check("low_fixpoints", ball.size(), bad.size(), bad));
  }

  report.merge(verify_monotone(group, sigma, ball));
  report.merge(verify_shadow(group, M, ball, "shadow_M"));
  return report;
}

}  // namespace coxshadow
