#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "coxshadow/analysis.hpp"
#include "coxshadow/oracle.hpp"
#include "coxshadow/report.hpp"

namespace coxshadow {

/// Reduced-word language and growth against the oracle up to its radius,
/// minimization laws and export round trips.
Report verify_automata(const Analysis& a, const OracleBall& oracle);

/// Main path against oracle: lengths, matrices, inversion sets, weak order,
/// walls, small roots, dominance, signatures, Shi and cone partitions and
/// their minima. `root_depth` bounds the oracle's small-root search. The cone
/// partition starts at `margin` and widens until stable, at most 2R.
Report verify_independence(const Analysis& a, const ElementBall& main, const OracleBall& oracle,
                           int margin, int root_depth, std::size_t cap = 2'000'000);

enum class Suite { Shi, Cone, Shadow, Bipodality, Automata, Independence, All };

/// Throws std::invalid_argument for unknown names.
Suite parse_suite(const std::string& name);

struct VerifyOptions {
  int radius = 8;
  /// Starting cone partition margin; radius / 2 when unset.
  std::optional<int> margin;
  /// Oracle small-root depth; one past the deepest small root when unset.
  std::optional<int> root_depth;
  std::size_t max_ball = 2'000'000;
  /// Suites run concurrently when > 1.
  int jobs = 1;
};

Report verify(const Analysis& a, Suite suite, const VerifyOptions& opts);

}  // namespace coxshadow
