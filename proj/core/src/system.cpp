#include "coxshadow/system.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <optional>
#include <regex>
#include <sstream>
#include <tuple>

namespace coxshadow {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_bond_value(const std::string& v) {
  if (v == "inf" || v == "oo" || v == "infinity" || v == "∞") return kInfinity;
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ParseError("bad bond value '" + v + "'");
  }
  return out;
}

std::vector<std::vector<int>> default_bonds(int rank) {
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  return m;
}

void set_bond(std::vector<std::vector<int>>& m, int i, int j, int v) {
  m[i][j] = v;
  m[j][i] = v;
}

CoxeterSystem linear(int rank, const std::vector<int>& chain) {
  auto m = default_bonds(rank);
  for (int i = 0; i + 1 < rank; ++i) set_bond(m, i, i + 1, chain[i]);
  return CoxeterSystem(rank, m);
}

CoxeterSystem triangle(int p, int q, int r) {
  auto m = default_bonds(3);
  set_bond(m, 0, 1, p);
  set_bond(m, 1, 2, q);
  set_bond(m, 0, 2, r);
  return CoxeterSystem(3, m);
}

std::optional<CoxeterSystem> preset(const std::string& name) {
  std::smatch mt;
  static const std::regex a_re(R"(A(\d+))");
  static const std::regex b_re(R"([BC](\d+))");
  static const std::regex i2_re(R"(I2\(\s*(\w+)\s*\))");
  static const std::regex tri_re(R"(triangle\(\s*(\w+)\s*,\s*(\w+)\s*,\s*(\w+)\s*\))");
  if (std::regex_match(name, mt, a_re)) {
    int n = std::stoi(mt[1]);
    if (n < 1) throw ParseError("A_n needs n >= 1");
    return linear(n, std::vector<int>(n, 3));
  }
  if (std::regex_match(name, mt, b_re)) {
    int n = std::stoi(mt[1]);
    if (n < 2) throw ParseError("B_n needs n >= 2");
    std::vector<int> chain(n, 3);
    chain[n - 2] = 4;
    return linear(n, chain);
  }
  if (std::regex_match(name, mt, i2_re)) {
    auto m = default_bonds(2);
    set_bond(m, 0, 1, parse_bond_value(mt[1]));
    return CoxeterSystem(2, m);
  }
  if (std::regex_match(name, mt, tri_re)) {
    return triangle(parse_bond_value(mt[1]), parse_bond_value(mt[2]),
                    parse_bond_value(mt[3]));
  }
  if (name == "G2") return linear(2, {6});
  if (name == "F4") return linear(4, {3, 4, 3});
  if (name == "H3") return linear(3, {5, 3});
  if (name == "H4") return linear(4, {5, 3, 3});
  if (name == "Atilde1" || name == "infdihedral") return linear(2, {kInfinity});
  if (name == "Atilde2") return triangle(3, 3, 3);
  if (name == "Btilde2" || name == "Ctilde2") return triangle(4, 4, 2);
  if (name == "Gtilde2") return triangle(6, 3, 2);
  return std::nullopt;
}

}  // namespace

CoxeterSystem::CoxeterSystem(int rank, std::vector<std::vector<int>> bonds)
    : rank_(rank), bonds_(std::move(bonds)) {
  if (rank_ < 1) throw ParseError("rank must be positive");
  if (static_cast<int>(bonds_.size()) != rank_) throw ParseError("bond matrix has wrong size");
  for (int i = 0; i < rank_; ++i) {
    if (static_cast<int>(bonds_[i].size()) != rank_) throw ParseError("bond matrix has wrong size");
    if (bonds_[i][i] != 1) throw ParseError("diagonal bonds must be 1");
    for (int j = 0; j < rank_; ++j) {
      if (i == j) continue;
      if (bonds_[i][j] != bonds_[j][i]) {
        throw ParseError("bond matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
      }
      if (bonds_[i][j] != kInfinity && bonds_[i][j] < 2) {
        throw ParseError("off-diagonal bond m " + std::to_string(i + 1) + " " +
                         std::to_string(j + 1) + " must be >= 2 or inf");
      }
    }
  }
  for (int i = 0; i < rank_; ++i) labels_.push_back("s" + std::to_string(i + 1));
}

int CoxeterSystem::max_finite_bond() const {
  int best = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = i + 1; j < rank_; ++j)
      if (bonds_[i][j] != kInfinity) best = std::max(best, bonds_[i][j]);
  return best;
}

std::string CoxeterSystem::canonical_text() const {
  std::ostringstream os;
  os << "rank " << rank_;
  for (int i = 0; i < rank_; ++i) {
    for (int j = i + 1; j < rank_; ++j) {
      os << "; m " << i + 1 << ' ' << j + 1 << " = ";
      if (bonds_[i][j] == kInfinity) os << "inf";
      else os << bonds_[i][j];
    }
  }
  return os.str();
}

CoxeterSystem parse_system(std::string_view text) {
  std::string whole = trim(text);
  if (whole.empty()) throw ParseError("empty system description");
  if (auto p = preset(whole)) return *p;

  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : whole) {
      if (ch == ';' || ch == '\n') {
        lines.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    lines.push_back(trim(cur));
  }

  static const std::regex rank_re(R"(rank\s+(\d+))");
  static const std::regex bond_re(R"(m\s+(\d+)\s+(\d+)\s*=\s*(\S+))");
  int rank = -1;
  std::vector<std::tuple<int, int, int>> entries;
  for (const auto& line : lines) {
    if (line.empty() || line[0] == '#') continue;
    std::smatch mt;
    if (std::regex_match(line, mt, rank_re)) {
      if (rank != -1) throw ParseError("rank given twice");
      rank = std::stoi(mt[1]);
    } else if (std::regex_match(line, mt, bond_re)) {
      entries.emplace_back(std::stoi(mt[1]), std::stoi(mt[2]), parse_bond_value(mt[3]));
    } else {
      throw ParseError("cannot parse line '" + line + "' (not a preset either)");
    }
  }
  if (rank < 1) throw ParseError("missing or invalid 'rank N' line");
  auto m = default_bonds(rank);
  std::vector<std::vector<bool>> seen(rank, std::vector<bool>(rank, false));
  for (auto [i, j, v] : entries) {
    if (i < 1 || j < 1 || i > rank || j > rank) {
      throw ParseError("generator index out of range in 'm " + std::to_string(i) + " " +
                       std::to_string(j) + "'");
    }
    --i;
    --j;
    if (i == j) {
      if (v != 1) throw ParseError("diagonal bonds must be 1");
      continue;
    }
    if (v != kInfinity && v < 2) {
      throw ParseError("off-diagonal bond m " + std::to_string(i + 1) + " " +
                       std::to_string(j + 1) + " must be >= 2 or inf");
    }
    // An explicit (j,i) entry that disagrees with (i,j) is a non-symmetric matrix.
    if (seen[j][i] && m[j][i] != v) throw ParseError("bond matrix is not symmetric");
    m[i][j] = v;
    seen[i][j] = true;
    if (!seen[j][i]) m[j][i] = v;
  }
  return CoxeterSystem(rank, m);
}

std::vector<std::string> preset_names() {
  return {"A<n>", "B<n>", "C<n>", "G2", "F4", "H3", "H4", "I2(m)", "Atilde1", "infdihedral",
          "Atilde2", "Btilde2", "Ctilde2", "Gtilde2", "triangle(p,q,r)"};
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    out += "s" + std::to_string(w[i] + 1);
  }
  return out;
}

Word parse_word(std::string_view text, int rank) {
  std::string t = trim(text);
  Word w;
  if (t.empty() || t == "e" || t == "id") return w;
  std::size_t i = 0;
  while (i < t.size()) {
    char ch = t[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == ',' || ch == '.') {
      ++i;
      continue;
    }
    if (ch != 's') throw ParseError("bad word '" + t + "'");
    ++i;
    std::size_t j = i;
    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
    if (j == i) throw ParseError("bad word '" + t + "'");
    int g = std::stoi(t.substr(i, j - i));
    if (g < 1 || g > rank) throw ParseError("generator s" + std::to_string(g) + " out of range");
    w.push_back(g - 1);
    i = j;
  }
  return w;
}

}  // namespace coxshadow
