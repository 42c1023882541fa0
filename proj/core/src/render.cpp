#include "coxshadow/render.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "coxshadow/conetype.hpp"
#include "coxshadow/shi.hpp"

namespace coxshadow {

namespace {

FieldElem minor2(const Field& f, const Matrix& b, int i, int j) {
  return f.sub(f.mul(b(i, i), b(j, j)), f.mul(b(i, j), b(j, i)));
}

FieldElem det3(const Field& f, const Matrix& b) {
  FieldElem d = f.zero();
  for (int j = 0; j < 3; ++j) {
    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    FieldElem cof = f.sub(f.mul(b(1, j1), b(2, j2)), f.mul(b(1, j2), b(2, j1)));
    d = f.add_mul(d, b(0, j), cof);
  }
  return d;
}

std::string color(std::size_t k, std::set<std::string>& used) {
  double h = std::fmod(static_cast<double>(k) * 137.50776, 360.0);
  double s = 0.45 + 0.15 * static_cast<double>(k % 3);
  double l = 0.55 + 0.08 * static_cast<double>((k / 3) % 3);
  for (;;) {
    double c = (1 - std::fabs(2 * l - 1)) * s;
    double x = c * (1 - std::fabs(std::fmod(h / 60.0, 2.0) - 1));
    double m = l - c / 2;
    std::array<double, 3> rgb{};
    int sector = static_cast<int>(h / 60.0) % 6;
    switch (sector) {
      case 0: rgb = {c, x, 0}; break;
      case 1: rgb = {x, c, 0}; break;
      case 2: rgb = {0, c, x}; break;
      case 3: rgb = {0, x, c}; break;
      case 4: rgb = {x, 0, c}; break;
      default: rgb = {c, 0, x}; break;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((rgb[0] + m) * 255)),
                  static_cast<int>(std::lround((rgb[1] + m) * 255)),
                  static_cast<int>(std::lround((rgb[2] + m) * 255)));
    if (used.insert(buf).second) return buf;
    h = std::fmod(h + 3.0, 360.0);
  }
}

}  // namespace

bool is_affine_rank3(const CoxeterGroup& group) {
  if (group.rank() != 3) return false;
  const Field& f = group.field();
  Matrix b = group.bilinear_form();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (f.sign(minor2(f, b, i, j)) <= 0) return false;
  return det3(f, b).is_zero();
}

Rendering render_parts(const Analysis& a, int R, Coloring coloring) {
  const CoxeterGroup& group = a.group();
  if (!is_affine_rank3(group)) {
    throw UnsupportedError("rendering needs an affine system of rank 3; use DOT export instead");
  }
  const Field& f = group.field();
  Matrix b = group.bilinear_form();
  // Null root delta = sum c_i a_i: the adjugate of the singular form has
  // rank one, so its first row is proportional to delta.
  auto cof = [&](int r0, int r1, int c0, int c1) {
    return f.to_double(f.sub(f.mul(b(r0, c0), b(r1, c1)), f.mul(b(r0, c1), b(r1, c0))));
  };
  std::array<double, 3> c{cof(1, 2, 1, 2), -cof(1, 2, 0, 2), cof(1, 2, 0, 1)};
  double scale_c = c[0];
  for (double& x : c) x /= scale_c;
  // Plane coordinates from the values on a_0, a_1 through G = L L^T.
  double g00 = f.to_double(b(0, 0)), g01 = f.to_double(b(0, 1)), g11 = f.to_double(b(1, 1));
  double l00 = std::sqrt(g00), l10 = g01 / l00, l11 = std::sqrt(g11 - l10 * l10);
  auto embed = [&](double x0, double x1) {
    double e0 = x0 / l00;
    double e1 = (x1 - l10 * e0) / l11;
    return std::array<double, 2>{e0, e1};
  };

  ElementBall ball(group, R);
  std::vector<std::array<std::array<double, 2>, 3>> alcoves(ball.size());
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (std::size_t id = 0; id < ball.size(); ++id) {
    const Matrix& inv = ball.at(static_cast<int>(id)).inv;
    for (int i = 0; i < 3; ++i) {
      auto p = embed(f.to_double(inv(i, 0)) / c[i], f.to_double(inv(i, 1)) / c[i]);
      alcoves[id][i] = p;
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  }

  std::vector<std::string> key(ball.size());
  for (std::size_t id = 0; id < ball.size(); ++id) {
    const Elt& g = ball.at(static_cast<int>(id));
    key[id] = coloring == Coloring::Shi
                  ? signature_string(shi_signature(group, a.sigma(), g))
                  : std::to_string(cone_state(a.minimal(), g));
  }
  std::map<std::string, std::string> fill;
  std::set<std::string> used;
  for (const auto& k : key)
    if (!fill.count(k)) fill.emplace(k, color(fill.size(), used));

  const double size = 800, pad = 10;
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (span <= 0) span = 1;
  double k = (size - 2 * pad) / span;
  auto px = [&](const std::array<double, 2>& p) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", pad + (p[0] - lo_x) * k, size - pad - (p[1] - lo_y) * k);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<title>" << group.system().canonical_text() << " ("
     << (coloring == Coloring::Shi ? "shi" : "cone") << " parts, radius " << R << ")</title>\n";
  os << "<g stroke=\"#ffffff\" stroke-width=\"0.5\">\n";
  for (std::size_t id = 0; id < ball.size(); ++id) {
    const auto& t = alcoves[id];
    os << "<polygon points=\"" << px(t[0]) << ' ' << px(t[1]) << ' ' << px(t[2]) << "\" fill=\""
       << fill[key[id]] << "\"/>\n";
  }
  os << "</g>\n<g stroke=\"#202020\" stroke-width=\"1.6\">\n";
  for (std::size_t id = 0; id < ball.size(); ++id) {
    for (int s = 0; s < 3; ++s) {
      int y = ball.right(static_cast<int>(id), s);
      if (y <= static_cast<int>(id) || key[y] == key[id]) continue;
      const auto& t = alcoves[id];
      std::array<double, 2> p = t[(s + 1) % 3], q = t[(s + 2) % 3];
      std::string a1 = px(p), a2 = px(q);
      os << "<line x1=\"" << a1.substr(0, a1.find(',')) << "\" y1=\"" << a1.substr(a1.find(',') + 1)
         << "\" x2=\"" << a2.substr(0, a2.find(',')) << "\" y2=\"" << a2.substr(a2.find(',') + 1)
         << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";

  Rendering out;
  out.svg = os.str();
  out.alcoves = ball.size();
  out.parts = fill.size();
  return out;
}

}  // namespace coxshadow
