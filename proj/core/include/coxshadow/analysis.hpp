#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "coxshadow/automata.hpp"
#include "coxshadow/group.hpp"
#include "coxshadow/roots.hpp"
#include "coxshadow/system.hpp"

namespace coxshadow {

struct AnalysisOptions {
  std::size_t max_states = 5'000'000;
  std::size_t max_roots = 1'000'000;
  /// When set, automata are read from and written to this directory.
  std::optional<std::filesystem::path> cache_dir;
};

/// A system with its small roots, both automata, M and the gates.
class Analysis {
 public:
  explicit Analysis(CoxeterSystem sys, AnalysisOptions opts = {});

  const CoxeterGroup& group() const { return group_; }
  const SmallRoots& sigma() const { return sigma_; }
  const Dfa& bh() const { return bh_; }
  const Dfa& minimal() const { return minimal_; }
  const std::vector<Elt>& M() const { return M_; }
  const std::vector<Elt>& gates() const { return gates_; }
  bool from_cache() const { return from_cache_; }

 private:
  CoxeterGroup group_;
  SmallRoots sigma_;
  Dfa bh_;
  Dfa minimal_;
  std::vector<Elt> M_;
  std::vector<Elt> gates_;
  bool from_cache_ = false;
};

}  // namespace coxshadow
