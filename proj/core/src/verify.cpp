#include "coxshadow/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <unordered_set>

#include "coxshadow/conetype.hpp"
#include "coxshadow/shi.hpp"

namespace coxshadow {

namespace {

std::string show(const Elt& g) { return format_word(g.word); }

using RootSet = std::unordered_set<RootVec, RootVecHash>;

}  // namespace

Report verify_automata(const Analysis& a, const OracleBall& oracle) {
  Report report("automata");
  const Dfa& bh = a.bh();
  const Dfa& mn = a.minimal();
  const int R = oracle.radius();
  const int n = oracle.rank();

  struct Node {
    int id, qb, qm, len;
  };
  std::vector<BigInt> counts(R + 1, 0);
  counts[0] = 1;
  std::size_t words = 0;
  std::vector<std::string> bad;
  std::vector<Node> stack{{0, bh.start(), mn.start(), 0}};
  std::vector<Word> path_words{{}};
  while (!stack.empty()) {
    Node node = stack.back();
    Word w = std::move(path_words.back());
    stack.pop_back();
    path_words.pop_back();
    if (node.len == R) continue;
    for (int s = 0; s < n; ++s) {
      ++words;
      int y = oracle.neighbour(node.id, s);
      bool reduced = oracle.length(y) == node.len + 1;
      int qb = bh.next(node.qb, s), qm = mn.next(node.qm, s);
      Word ws = w;
      ws.push_back(s);
      if (reduced != (qb != Dfa::kNone) || (qb != Dfa::kNone) != (qm != Dfa::kNone)) {
        bad.push_back(format_word(ws) + (reduced ? " reduced but rejected" : " accepted but not reduced"));
        continue;
      }
      if (!reduced) continue;
      counts[node.len + 1] += 1;
      stack.push_back({y, qb, qm, node.len + 1});
      path_words.push_back(std::move(ws));
    }
  }
  report.add(make_check("language", words, bad.size(), bad, 0,
                        "all words up to length " + std::to_string(R)));

  std::vector<std::string> gbad;
  auto gb = word_growth(bh, R), gm = word_growth(mn, R);
  for (int k = 0; k <= R; ++k) {
    if (gb[k] != counts[k] || gm[k] != counts[k]) {
      gbad.push_back("length " + std::to_string(k) + ": automaton " + gb[k].str() +
                     ", oracle " + counts[k].str());
    }
  }
  report.add(make_check("growth", R + 1, gbad.size(), gbad));

  std::vector<std::string> mbad;
  if (!equivalent(bh, mn)) mbad.push_back("minimize changed the language");
  if (!(minimize(mn) == mn)) mbad.push_back("minimize not idempotent");
  if (!(minimize(bh) == mn)) mbad.push_back("minimize not deterministic");
  if (mn.size() > bh.size()) mbad.push_back("minimize grew the automaton");
  report.add(make_check("minimize", 4, mbad.size(), mbad));

  std::vector<std::string> rbad;
  for (const Dfa* d : {&bh, &mn}) {
    if (!(import_json(export_json(*d)) == *d)) rbad.push_back(d->kind() + ": json round trip");
    if (export_dot(*d) != export_dot(*d)) rbad.push_back(d->kind() + ": dot not deterministic");
  }
  report.add(make_check("export_roundtrip", 2, rbad.size(), rbad));
  return report;
}

Report verify_independence(const Analysis& a, const ElementBall& main, const OracleBall& oracle,
                           int margin, int root_depth, std::size_t cap) {
  Report report("independence");
  const CoxeterGroup& group = a.group();
  const SmallRoots& sigma = a.sigma();

  std::vector<int> to_oracle(main.size(), -1), to_main(oracle.size(), -1);
  {
    std::vector<std::string> bad;
    if (main.size() != oracle.size()) {
      bad.push_back("main " + std::to_string(main.size()) + " elements, oracle " +
                    std::to_string(oracle.size()));
    }
    for (std::size_t id = 0; id < main.size(); ++id) {
      auto o = oracle.find(main.at(static_cast<int>(id)).mat);
      if (!o) {
        bad.push_back(show(main.at(static_cast<int>(id))) + " missing from oracle");
        continue;
      }
      to_oracle[id] = *o;
      to_main[*o] = static_cast<int>(id);
    }
    for (std::size_t o = 0; o < oracle.size(); ++o) {
      Elt e = group.from_word(oracle.word(static_cast<int>(o)));
      if (e.len != oracle.length(static_cast<int>(o)) || !(e.mat == oracle.matrix(static_cast<int>(o)))) {
        bad.push_back(format_word(oracle.word(static_cast<int>(o))) + ": length or matrix differs");
      }
      if (to_main[o] < 0) bad.push_back(format_word(oracle.word(static_cast<int>(o))) + " missing from main");
    }
    report.add(make_check("lengths", oracle.size(), bad.size(), bad));
    if (!bad.empty()) return report;
  }

  {
    std::vector<std::string> bad;
    for (std::size_t id = 0; id < main.size(); ++id) {
      const Elt& g = main.at(static_cast<int>(id));
      auto roots = group.inversion_roots(g);
      RootSet mine(roots.begin(), roots.end());
      RootSet theirs;
      const auto& inv = oracle.inversions(to_oracle[id]);
      for (auto w = inv.find_first(); w != inv.npos; w = inv.find_next(w)) {
        theirs.insert(oracle.wall_root(static_cast<int>(w)));
      }
      if (mine != theirs || static_cast<int>(roots.size()) != g.len) bad.push_back(show(g));
    }
    report.add(make_check("inversion_walls", main.size(), bad.size(), bad));
  }

  {
    std::vector<std::string> bad;
    for (std::size_t w = 0; w < oracle.wall_count(); ++w) {
      const RootVec& root = oracle.wall_root(static_cast<int>(w));
      if (!group.is_positive(root) || !(group.wall_from_root(root).refl.mat == oracle.wall_reflection(static_cast<int>(w)))) {
        bad.push_back(group.root_string(root));
      }
    }
    report.add(make_check("walls", oracle.wall_count(), bad.size(), bad));
  }

  {
    std::size_t pairs = 0;
    std::vector<std::string> bad;
    for (std::size_t o = 0; o < oracle.size(); ++o) {
      auto down = oracle.down_set(static_cast<int>(o));
      std::unordered_set<int> below(down.begin(), down.end());
      int gm = to_main[o];
      for (std::size_t p = 0; p < main.count_up_to(main.at(gm).len); ++p) {
        ++pairs;
        bool mine = main.inversions(static_cast<int>(p)).is_subset_of(main.inversions(gm));
        if (mine != (below.count(to_oracle[p]) > 0)) {
          bad.push_back(show(main.at(static_cast<int>(p))) + " vs " + show(main.at(gm)));
        }
      }
    }
    // The element-level predicate on a prefix of the ball.
    std::size_t k = std::min<std::size_t>(main.size(), 60);
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t g = 0; g < k; ++g) {
        ++pairs;
        bool mine = group.weak_leq(main.at(static_cast<int>(p)), main.at(static_cast<int>(g)));
        if (mine != oracle.below(to_oracle[p], to_oracle[g])) {
          bad.push_back(show(main.at(static_cast<int>(p))) + " vs " + show(main.at(static_cast<int>(g))));
        }
      }
    }
    report.add(make_check("weak_order", pairs, bad.size(), bad));
  }

  std::vector<RootVec> oracle_sigma;
  {
    std::vector<std::string> bad;
    std::size_t undecided = 0;
    std::string detail = "depth " + std::to_string(root_depth);
    try {
      oracle_sigma = oracle_small_roots(oracle.system(), root_depth);
      RootSet theirs(oracle_sigma.begin(), oracle_sigma.end());
      RootSet mine;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma.depth(i) <= root_depth) mine.insert(sigma[i]);
        else ++undecided;
      }
      if (mine != theirs) {
        bad.push_back("main " + std::to_string(mine.size()) + " roots, oracle " +
                      std::to_string(theirs.size()));
      }
    } catch (const InconclusiveError& e) {
      ++undecided;
      detail = e.what();
    }
    report.add(make_check("small_roots", sigma.size(), bad.size(), bad, undecided, detail));
  }

  {
    auto depths = oracle_wall_depths(oracle);
    int dd = std::min(6, oracle.radius() / 2);
    std::vector<int> walls;
    for (std::size_t w = 0; w < depths.size(); ++w)
      if (depths[w] > 0 && depths[w] <= dd) walls.push_back(static_cast<int>(w));
    std::size_t pairs = 0;
    std::vector<std::string> bad;
    for (int b : walls) {
      for (int al : walls) {
        if (b == al) continue;
        ++pairs;
        bool mine = dominates(group, oracle.wall_root(b), oracle.wall_root(al));
        if (mine != oracle_dominates(oracle, b, al)) {
          bad.push_back(group.root_string(oracle.wall_root(b)) + " over " +
                        group.root_string(oracle.wall_root(al)));
        }
      }
    }
    report.add(make_check("dominance", pairs, bad.size(), bad, 0,
                          "walls up to depth " + std::to_string(dd)));
  }

  // Elementary walls of the oracle ball, located through the oracle's own roots.
  std::vector<int> elementary;
  {
    std::unordered_map<RootVec, int, RootVecHash> wall_of_root;
    for (std::size_t w = 0; w < oracle.wall_count(); ++w) wall_of_root.emplace(oracle.wall_root(static_cast<int>(w)), static_cast<int>(w));
    for (const auto& r : oracle_sigma) {
      auto it = wall_of_root.find(r);
      if (it != wall_of_root.end()) elementary.push_back(it->second);
    }
  }
  std::vector<int> shi_class = oracle_wall_partition(oracle, elementary);
  {
    std::vector<std::string> bad;
    for (std::size_t id = 0; id < main.size(); ++id) {
      const Elt& g = main.at(static_cast<int>(id));
      RootSet mine, theirs;
      for (int i : signature_members(shi_signature(group, sigma, g))) mine.insert(sigma[i]);
      const auto& inv = oracle.inversions(to_oracle[id]);
      for (int w : elementary)
        if (inv.test(w)) theirs.insert(oracle.wall_root(w));
      if (mine != theirs) bad.push_back(show(g));
    }
    report.add(make_check("signatures", main.size(), bad.size(), bad, oracle_sigma.empty() ? 1 : 0));
  }

  auto check_minima = [&](const std::string& name, const std::vector<int>& cls,
                          const std::vector<int>& main_min) {
    std::map<int, std::vector<int>> parts;
    for (std::size_t o = 0; o < cls.size(); ++o)
      if (cls[o] >= 0) parts[cls[o]].push_back(static_cast<int>(o));
    std::vector<std::string> bad;
    for (const auto& [c, members] : parts) {
      PartMinimum pm = oracle_part_minimum(oracle, members);
      if (!pm.unique()) {
        bad.push_back("not unique: " + format_word(oracle.word(pm.witnesses.first)) + ", " +
                      format_word(oracle.word(pm.witnesses.second)));
        continue;
      }
      for (int o : members) {
        if (to_oracle[main_min[to_main[o]]] != *pm.minimum) {
          bad.push_back(format_word(oracle.word(o)) + ": main minimum " +
                        show(main.at(main_min[to_main[o]])) + ", oracle " +
                        format_word(oracle.word(*pm.minimum)));
        }
      }
    }
    report.add(make_check(name, parts.size(), bad.size(), bad, 0,
                          std::to_string(parts.size()) + " parts"));
  };
  check_minima("shi_minima", shi_class, shi_minima(group, sigma, main));

  // Cone types of ball(R), probed in an oracle ball of radius R + m; m grows
  // until the partition stops changing.
  {
    const int R = main.radius();
    std::optional<OracleBall> wide;
    ConePartition cp;
    int m = std::max(1, margin);
    for (;; ++m) {
      try {
        wide.emplace(build_ball(group.system(), R + m, cap));
      } catch (const CapExceeded&) {
        break;
      }
      cp = oracle_cone_partition(*wide, m);
      if (cp.stable || m >= 2 * R) break;
    }
    if (!wide || cp.margin != m) {
      report.add(make_check("cone_partition", 0, 0, {}, 1, "oracle ball cap reached at margin " + std::to_string(m)));
      return report;
    }
    std::vector<int> main_of(wide->size(), -1);
    for (std::size_t id = 0; id < main.size(); ++id)
      if (auto o = wide->find(main.at(static_cast<int>(id)).mat)) main_of[*o] = static_cast<int>(id);
    std::vector<int> gate_of = cone_gates(a.minimal(), main);
    std::map<int, int> class_to_state, state_to_class;
    std::map<int, std::vector<int>> parts;
    std::vector<std::string> bad;
    std::size_t checked = 0;
    for (std::size_t o = 0; o < wide->size(); ++o) {
      int c = cp.class_of[o];
      if (c < 0 || wide->length(static_cast<int>(o)) > R) continue;
      ++checked;
      parts[c].push_back(static_cast<int>(o));
      int q = cone_state(a.minimal(), main.at(main_of[o]));
      auto [i1, n1] = class_to_state.emplace(c, q);
      auto [i2, n2] = state_to_class.emplace(q, c);
      if (i1->second != q || i2->second != c) bad.push_back(format_word(wide->word(static_cast<int>(o))));
    }
    report.add(make_check("cone_partition", checked, bad.size(), bad, cp.stable ? 0 : 1,
                          std::to_string(parts.size()) + " classes at margin " + std::to_string(m) +
                              (cp.stable ? "" : ", not stable")));

    std::vector<std::string> mbad;
    for (const auto& [c, members] : parts) {
      PartMinimum pm = oracle_part_minimum(*wide, members);
      if (!pm.unique()) {
        mbad.push_back("not unique: " + format_word(wide->word(pm.witnesses.first)) + ", " +
                       format_word(wide->word(pm.witnesses.second)));
        continue;
      }
      for (int o : members) {
        const Elt& mine = main.at(gate_of[main_of[o]]);
        if (!(mine.mat == wide->matrix(*pm.minimum))) {
          mbad.push_back(format_word(wide->word(o)) + ": main minimum " + show(mine) + ", oracle " +
                         format_word(wide->word(*pm.minimum)));
        }
      }
    }
    report.add(make_check("cone_minima", parts.size(), mbad.size(), mbad, 0,
                          std::to_string(parts.size()) + " parts"));
  }
  return report;
}

Suite parse_suite(const std::string& name) {
  static const std::map<std::string, Suite> names{
      {"shi", Suite::Shi},           {"cone", Suite::Cone},
      {"shadow", Suite::Shadow},     {"bipodality", Suite::Bipodality},
      {"automata", Suite::Automata}, {"independence", Suite::Independence},
      {"all", Suite::All}};
  auto it = names.find(name);
  if (it == names.end()) throw std::invalid_argument("unknown suite: " + name);
  return it->second;
}

Report verify(const Analysis& a, Suite suite, const VerifyOptions& opts) {
  const int R = opts.radius;
  auto want = [&](Suite s) { return suite == s || suite == Suite::All; };
  bool need_main = suite != Suite::Bipodality && suite != Suite::Automata;
  bool need_oracle = want(Suite::Bipodality) || want(Suite::Automata) || want(Suite::Independence);
  std::optional<ElementBall> main;
  std::optional<OracleBall> oracle;
  if (need_main) main.emplace(a.group(), R, opts.max_ball);
  if (need_oracle) oracle.emplace(build_ball(a.group().system(), R, opts.max_ball));

  std::vector<std::function<Report()>> tasks;
  if (want(Suite::Shi)) tasks.push_back([&] { return verify_shi(a.group(), a.sigma(), a.bh(), *main); });
  if (want(Suite::Cone)) {
    tasks.push_back([&] { return verify_cone_theorems(a.group(), a.minimal(), *main); });
    tasks.push_back([&] { return verify_hnw(a.group(), a.bh(), a.minimal()); });
  }
  if (suite == Suite::Shadow) {
    tasks.push_back([&] { return verify_shadow(a.group(), a.M(), *main, "shadow_M"); });
    tasks.push_back([&] {
      return verify_shadow(a.group(), a.gates(), *main, "shadow_gates", "suffix_closure_imported");
    });
  }
  if (want(Suite::Bipodality)) tasks.push_back([&] { return verify_bipodality(*oracle); });
  if (want(Suite::Automata)) tasks.push_back([&] { return verify_automata(a, *oracle); });
  if (want(Suite::Independence)) {
    int depth = 1;
    for (std::size_t i = 0; i < a.sigma().size(); ++i) depth = std::max(depth, a.sigma().depth(i));
    tasks.push_back([&, depth] {
      return verify_independence(a, *main, *oracle, opts.margin.value_or(std::max(1, R / 2)),
                                 opts.root_depth.value_or(depth + 1), opts.max_ball);
    });
  }

  std::vector<Report> parts(tasks.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, opts.jobs));
  for (std::size_t first = 0; first < tasks.size(); first += jobs) {
    std::vector<std::future<Report>> wave;
    std::size_t last = std::min(tasks.size(), first + jobs);
    for (std::size_t i = first; i < last; ++i)
      wave.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, tasks[i]));
    for (std::size_t i = first; i < last; ++i) parts[i] = wave[i - first].get();
  }
  Report out("verify");
  for (const auto& r : parts) out.merge(r);
  return out;
}

}  // namespace coxshadow
