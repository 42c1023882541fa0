#pragma once

#include <vector>

#include "coxshadow/automata.hpp"
#include "coxshadow/group.hpp"
#include "coxshadow/report.hpp"

namespace coxshadow {

/// State of the minimal automaton after reading a reduced word of g^-1; two
/// elements share a state iff they lie in the same cone type part.
int cone_state(const Dfa& minimal, const Elt& g);

/// mu(g): step to gs while l(gs) < l(g) and gs stays in the part of g,
/// smallest generator first.
Elt gate(const CoxeterGroup& group, const Dfa& minimal, const Elt& g);

/// One gate per state of the minimal automaton, indexed by state.
std::vector<Elt> gates(const CoxeterGroup& group, const Dfa& minimal);

/// Walls of edges (h, hs) with h in T(g), l(h) <= R - l(g), and hs outside
/// T(g). They all separate id from g^-1. Requires R >= l(g) + 2.
std::vector<Wall> boundary_walls(const CoxeterGroup& group, const Elt& g, int R);

/// Same, for T = T(x^-1) with x a ball element, as roots. Edges leaving the
/// ball are classified without leaving it.
std::vector<RootVec> boundary_roots(const CoxeterGroup& group, const ElementBall& ball, int x,
                                    int h_radius);

/// For each ball element, the id of mu(g), memoized along the ball.
std::vector<int> cone_gates(const Dfa& minimal, const ElementBall& ball);

/// Smallest elements of parts, join closure of the gates, convexity of
/// parts, gate idempotence and monotonicity, the boundary stop rule, and the
/// (imported) suffix closure of the gates.
Report verify_cone_theorems(const CoxeterGroup& group, const Dfa& minimal, const ElementBall& ball);
Report verify_cone_theorems(const CoxeterGroup& group, const Dfa& minimal, int R);

/// The gates are in bijection with the states of the minimal automaton.
Report verify_hnw(const CoxeterGroup& group, const Dfa& bh, const Dfa& minimal);

}  // namespace coxshadow
