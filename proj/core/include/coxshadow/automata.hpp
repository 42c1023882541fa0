#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coxshadow/field.hpp"
#include "coxshadow/roots.hpp"
#include "coxshadow/system.hpp"

namespace coxshadow {

/// Partial deterministic automaton over the generators. Every state accepts;
/// a missing transition is the only way to reject. State 0 is the start.
class Dfa {
 public:
  static constexpr int kNone = -1;

  Dfa() = default;
  Dfa(int alphabet, std::string kind) : alphabet_(alphabet), kind_(std::move(kind)) {}

  int alphabet() const { return alphabet_; }
  int size() const { return static_cast<int>(meta_.size()); }
  int start() const { return 0; }
  const std::string& kind() const { return kind_; }

  int add_state(std::vector<int> meta);
  void set(int from, int s, int to) { trans_[from * alphabet_ + s] = to; }
  int next(int from, int s) const { return trans_[from * alphabet_ + s]; }
  /// BH automata: the small-root indices of the state; minimal automata: the
  /// class id.
  const std::vector<int>& meta(int state) const { return meta_[state]; }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  int alphabet_ = 0;
  std::string kind_;
  std::vector<int> trans_;
  std::vector<std::vector<int>> meta_;
};

/// State reached from the start by reading w, if the run does not block.
std::optional<int> run(const Dfa& dfa, const Word& w);
bool accepts(const Dfa& dfa, const Word& w);

/// States are sets of small roots; reading s from A is allowed iff a_s is
/// not in A and leads to {a_s} u (s.A n Sigma). Throws CapExceeded past
/// max_states.
Dfa brink_howlett(const CoxeterGroup& group, const SmallRoots& sigma,
                  std::size_t max_states = 5'000'000);

/// Moore partition refinement, where "no transition" is an observation of
/// its own. The result is renumbered in breadth-first order from the start.
Dfa minimize(const Dfa& dfa);

/// Language equality, decided exactly on the product automaton.
bool equivalent(const Dfa& a, const Dfa& b);

/// Number of accepted words of each length 0..nmax.
std::vector<BigInt> word_growth(const Dfa& dfa, int nmax);

/// ShortLex-least word reaching each state.
std::vector<Word> shortest_words(const Dfa& dfa);

/// DOT output. `labels`, when given, replaces the default state labels.
std::string export_dot(const Dfa& dfa, const std::vector<std::string>& labels = {});
std::string export_json(const Dfa& dfa);
/// Throws ParseError on malformed input.
Dfa import_json(const std::string& text);
std::string growth_csv(const std::vector<BigInt>& counts);

/// 16 hex digits of FNV-1a over the canonical text of the system.
std::string system_hash(const CoxeterSystem& sys);

/// Automata cached as JSON under `dir`, keyed by system hash and kind.
class AutomatonCache {
 public:
  explicit AutomatonCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const CoxeterSystem& sys, const std::string& kind) const;
  std::optional<Dfa> load(const CoxeterSystem& sys, const std::string& kind) const;
  void store(const CoxeterSystem& sys, const Dfa& dfa) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace coxshadow
