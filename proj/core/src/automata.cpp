#include "coxshadow/automata.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace coxshadow {

using json = nlohmann::json;

int Dfa::add_state(std::vector<int> meta) {
  meta_.push_back(std::move(meta));
  trans_.resize(meta_.size() * alphabet_, kNone);
  return size() - 1;
}

std::optional<int> run(const Dfa& dfa, const Word& w) {
  int q = dfa.start();
  for (int s : w) {
    if (s < 0 || s >= dfa.alphabet()) return std::nullopt;
    q = dfa.next(q, s);
    if (q == Dfa::kNone) return std::nullopt;
  }
  return q;
}

bool accepts(const Dfa& dfa, const Word& w) { return run(dfa, w).has_value(); }

namespace {

struct BitsetHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

Dfa brink_howlett(const CoxeterGroup& group, const SmallRoots& sigma, std::size_t max_states) {
  const int n = group.rank();
  const std::size_t words = (sigma.size() + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  auto test = [](const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; };
  auto put = [](Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); };
  auto members = [&](const Bits& b) {
    std::vector<int> out;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (test(b, static_cast<int>(i))) out.push_back(static_cast<int>(i));
    return out;
  };

  Dfa dfa(n, "brink-howlett");
  std::unordered_map<Bits, int, BitsetHash> ids;
  std::vector<Bits> states;
  Bits empty(words, 0);
  ids.emplace(empty, dfa.add_state({}));
  states.push_back(empty);
  for (int q = 0; q < dfa.size(); ++q) {
    for (int s = 0; s < n; ++s) {
      Bits cur = states[q];  // copy; states may reallocate below
      if (test(cur, sigma.simple(s))) continue;
      Bits target(words, 0);
      put(target, sigma.simple(s));
      for (int a : members(cur)) {
        const Transition& t = sigma.table()[a][s];
        if (t.kind == Transition::Kind::SmallRoot) put(target, t.target);
      }
      auto it = ids.find(target);
      int id;
      if (it == ids.end()) {
        if (static_cast<std::size_t>(dfa.size()) >= max_states) {
          throw CapExceeded("Brink-Howlett automaton exceeds " + std::to_string(max_states) +
                            " states");
        }
        id = dfa.add_state(members(target));
        ids.emplace(target, id);
        states.push_back(std::move(target));
      } else {
        id = it->second;
      }
      dfa.set(q, s, id);
    }
  }
  return dfa;
}

Dfa minimize(const Dfa& dfa) {
  const int n = dfa.alphabet();
  const int size = dfa.size();
  std::vector<int> cls(size, 0);
  int count = size > 0 ? 1 : 0;
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(size);
    for (int p = 0; p < size; ++p) {
      std::vector<int> sig;
      sig.reserve(n + 1);
      sig.push_back(cls[p]);
      for (int s = 0; s < n; ++s) {
        int q = dfa.next(p, s);
        sig.push_back(q == Dfa::kNone ? -1 : cls[q]);
      }
      auto [it, inserted] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      next[p] = it->second;
    }
    int new_count = static_cast<int>(sig_ids.size());
    cls = std::move(next);
    if (new_count == count) break;
    count = new_count;
  }
  // Renumber classes breadth-first from the start class.
  std::vector<int> order(count, -1);
  std::vector<int> rep;
  std::deque<int> queue;
  Dfa out(n, "minimal");
  if (size == 0) return out;
  order[cls[dfa.start()]] = 0;
  rep.push_back(dfa.start());
  queue.push_back(dfa.start());
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (int s = 0; s < n; ++s) {
      int q = dfa.next(p, s);
      if (q == Dfa::kNone || order[cls[q]] >= 0) continue;
      order[cls[q]] = static_cast<int>(rep.size());
      rep.push_back(q);
      queue.push_back(q);
    }
  }
  for (std::size_t i = 0; i < rep.size(); ++i) out.add_state({static_cast<int>(i)});
  for (std::size_t i = 0; i < rep.size(); ++i) {
    for (int s = 0; s < n; ++s) {
      int q = dfa.next(rep[i], s);
      if (q != Dfa::kNone) out.set(static_cast<int>(i), s, order[cls[q]]);
    }
  }
  return out;
}

bool equivalent(const Dfa& a, const Dfa& b) {
  if (a.alphabet() != b.alphabet()) return false;
  if (a.size() == 0 || b.size() == 0) return a.size() == b.size();
  std::map<std::pair<int, int>, bool> seen;
  std::deque<std::pair<int, int>> queue{{a.start(), b.start()}};
  seen[{a.start(), b.start()}] = true;
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    for (int s = 0; s < a.alphabet(); ++s) {
      int x = a.next(p, s), y = b.next(q, s);
      if ((x == Dfa::kNone) != (y == Dfa::kNone)) return false;
      if (x == Dfa::kNone) continue;
      if (seen.emplace(std::make_pair(x, y), true).second) queue.emplace_back(x, y);
    }
  }
  return true;
}

std::vector<BigInt> word_growth(const Dfa& dfa, int nmax) {
  if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
  std::vector<BigInt> out;
  if (dfa.size() == 0) return std::vector<BigInt>(nmax + 1, 0);
  std::vector<BigInt> cur(dfa.size(), 0);
  cur[dfa.start()] = 1;
  out.push_back(1);
  for (int k = 1; k <= nmax; ++k) {
    std::vector<BigInt> nxt(dfa.size(), 0);
    for (int p = 0; p < dfa.size(); ++p) {
      if (cur[p] == 0) continue;
      for (int s = 0; s < dfa.alphabet(); ++s) {
        int q = dfa.next(p, s);
        if (q != Dfa::kNone) nxt[q] += cur[p];
      }
    }
    BigInt total = 0;
    for (const auto& c : nxt) total += c;
    out.push_back(total);
    cur = std::move(nxt);
  }
  return out;
}

std::vector<Word> shortest_words(const Dfa& dfa) {
  std::vector<Word> words(dfa.size());
  std::vector<bool> seen(dfa.size(), false);
  if (dfa.size() == 0) return words;
  std::deque<int> queue{dfa.start()};
  seen[dfa.start()] = true;
  // Breadth-first with generators in order yields the ShortLex-least word.
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (int s = 0; s < dfa.alphabet(); ++s) {
      int q = dfa.next(p, s);
      if (q == Dfa::kNone || seen[q]) continue;
      seen[q] = true;
      words[q] = words[p];
      words[q].push_back(s);
      queue.push_back(q);
    }
  }
  return words;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string default_label(const Dfa& dfa, int p) {
  std::string out = "{";
  const auto& m = dfa.meta(p);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m[i]);
  }
  return out + "}";
}

}  // namespace

std::string export_dot(const Dfa& dfa, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(dfa.kind()) << "\" {\n";
  os << "  rankdir=LR;\n  node [shape=circle];\n  init [shape=point];\n";
  if (dfa.size() > 0) os << "  init -> q0;\n";
  for (int p = 0; p < dfa.size(); ++p) {
    std::string label = p < static_cast<int>(labels.size()) ? labels[p] : default_label(dfa, p);
    os << "  q" << p << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (int p = 0; p < dfa.size(); ++p) {
    for (int s = 0; s < dfa.alphabet(); ++s) {
      int q = dfa.next(p, s);
      if (q != Dfa::kNone) os << "  q" << p << " -> q" << q << " [label=\"s" << s + 1 << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const Dfa& dfa) {
  json j;
  j["kind"] = dfa.kind();
  j["alphabet"] = dfa.alphabet();
  j["states"] = dfa.size();
  j["start"] = dfa.start();
  json trans = json::array();
  for (int p = 0; p < dfa.size(); ++p)
    for (int s = 0; s < dfa.alphabet(); ++s)
      if (dfa.next(p, s) != Dfa::kNone) trans.push_back({p, s, dfa.next(p, s)});
  j["transitions"] = trans;
  json meta = json::array();
  for (int p = 0; p < dfa.size(); ++p) meta.push_back(dfa.meta(p));
  j["meta"] = meta;
  return j.dump(1);
}

Dfa import_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  }
  try {
    int alphabet = j.at("alphabet").get<int>();
    int states = j.at("states").get<int>();
    if (alphabet < 1 || states < 0) throw ParseError("automaton JSON: bad sizes");
    if (j.at("start").get<int>() != 0) throw ParseError("automaton JSON: start must be 0");
    const auto& meta = j.at("meta");
    if (static_cast<int>(meta.size()) != states) throw ParseError("automaton JSON: meta size");
    Dfa dfa(alphabet, j.value("kind", std::string{}));
    for (int p = 0; p < states; ++p) dfa.add_state(meta[p].get<std::vector<int>>());
    for (const auto& t : j.at("transitions")) {
      int p = t.at(0).get<int>(), s = t.at(1).get<int>(), q = t.at(2).get<int>();
      if (p < 0 || p >= states || q < 0 || q >= states || s < 0 || s >= alphabet) {
        throw ParseError("automaton JSON: transition out of range");
      }
      dfa.set(p, s, q);
    }
    return dfa;
  } catch (const json::exception& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  }
}

std::string growth_csv(const std::vector<BigInt>& counts) {
  std::ostringstream os;
  os << "length,count\n";
  for (std::size_t k = 0; k < counts.size(); ++k) os << k << ',' << counts[k].str() << '\n';
  return os.str();
}

std::string system_hash(const CoxeterSystem& sys) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : sys.canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path AutomatonCache::path_for(const CoxeterSystem& sys,
                                               const std::string& kind) const {
  return dir_ / (system_hash(sys) + "-" + kind + ".json");
}

std::optional<Dfa> AutomatonCache::load(const CoxeterSystem& sys, const std::string& kind) const {
  auto p = path_for(sys, kind);
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception&) {
    return std::nullopt;
  }
  // A hash collision or stale file must not masquerade as this system.
  if (j.value("system", std::string{}) != sys.canonical_text()) return std::nullopt;
  return import_json(j.at("dfa").dump());
}

void AutomatonCache::store(const CoxeterSystem& sys, const Dfa& dfa) const {
  std::filesystem::create_directories(dir_);
  json j;
  j["system"] = sys.canonical_text();
  j["dfa"] = json::parse(export_json(dfa));
  std::ofstream out(path_for(sys, dfa.kind()));
  out << j.dump(1) << '\n';
}

}  // namespace coxshadow
