#pragma once

#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "coxshadow/automata.hpp"
#include "coxshadow/group.hpp"
#include "coxshadow/report.hpp"
#include "coxshadow/roots.hpp"

namespace coxshadow {

/// Bitset over the small roots, in their canonical order.
using ShiSignature = boost::dynamic_bitset<>;

/// {b in Sigma : g^-1.b < 0}, the elementary walls between id and g.
ShiSignature shi_signature(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& g);
std::vector<int> signature_members(const ShiSignature& sig);
std::string signature_string(const ShiSignature& sig);

/// m(g): step to gs while l(gs) < l(g) and the crossed wall is not
/// elementary, smallest generator first.
Elt shi_minimum(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& g);
/// Every descent wall is elementary.
bool is_low(const CoxeterGroup& group, const SmallRoots& sigma, const Elt& h);

/// One minimal element per state of the Brink-Howlett automaton, indexed by
/// state. The state reached by reading g^-1 is the signature of g.
std::vector<Elt> enumerate_M(const CoxeterGroup& group, const SmallRoots& sigma, const Dfa& bh);

/// A part restricted to a ball: key, minimum and the ids of its members.
struct PartRecord {
  std::string key;
  Elt min_elt;
  std::vector<int> members;
};

/// Shi parts meeting the ball, ordered by their first member.
std::vector<PartRecord> shi_parts(const CoxeterGroup& group, const SmallRoots& sigma,
                                  const ElementBall& ball);

/// For each ball element, the id of m(g). Follows the same greedy descent as
/// shi_minimum, memoized along the ball.
std::vector<int> shi_minima(const CoxeterGroup& group, const SmallRoots& sigma,
                            const ElementBall& ball);

/// Garside shadow checks: contains S, closed under g^-1 h for g <= h in B,
/// and closed under every join found inside `ball`. The suffix check is
/// named `suffix_label`.
Report verify_shadow(const CoxeterGroup& group, const std::vector<Elt>& B,
                     const ElementBall& ball, const std::string& title = "shadow",
                     const std::string& suffix_label = "suffix_closure");
Report verify_shadow(const CoxeterGroup& group, const std::vector<Elt>& B, int radius);

/// m(g) <= m(h) for all comparable g <= h in the ball.
Report verify_monotone(const CoxeterGroup& group, const SmallRoots& sigma,
                       const ElementBall& ball);
Report verify_monotone(const CoxeterGroup& group, const SmallRoots& sigma, int radius);

/// The full Shi suite over one ball: small-root sanity, signature and
/// automaton agreement, smallest elements, fixpoints, monotonicity and the
/// shadow property of M.
Report verify_shi(const CoxeterGroup& group, const SmallRoots& sigma, const Dfa& bh,
                  const ElementBall& ball);

}  // namespace coxshadow
