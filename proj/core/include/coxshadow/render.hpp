#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "coxshadow/analysis.hpp"

namespace coxshadow {

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Coloring { Shi, Cone };

struct Rendering {
  std::string svg;
  std::size_t alcoves = 0;
  /// Number of parts meeting the window, one fill color each.
  std::size_t parts = 0;
};

/// The Tits form is positive semidefinite with a one-dimensional kernel and
/// the rank is 3.
bool is_affine_rank3(const CoxeterGroup& group);

/// Alcove picture of the elements of length <= R, filled by part. Edges
/// between alcoves of different parts are drawn heavier. Throws
/// UnsupportedError unless the system is affine of rank 3.
Rendering render_parts(const Analysis& a, int R, Coloring coloring);

}  // namespace coxshadow
