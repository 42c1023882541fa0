#include "coxshadow/roots.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace coxshadow {

SmallRoots::SmallRoots(const CoxeterGroup& group, std::vector<RootVec> sorted_roots)
    : roots_(std::move(sorted_roots)) {
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (!index_.emplace(roots_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate small root");
    }
    depths_.push_back(group.depth(roots_[i]));
  }
  for (int s = 0; s < group.rank(); ++s) {
    auto idx = index_of(group.simple_root(s));
    if (!idx) throw std::invalid_argument("small roots must contain every simple root");
    simple_.push_back(*idx);
  }
  table_ = reflection_table(group, roots_);
}

std::optional<int> SmallRoots::index_of(const RootVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool dominates(const CoxeterGroup& group, const RootVec& beta, const RootVec& alpha) {
  if (beta == alpha) return false;
  const Field& f = group.field();
  if (f.sign(f.sub(group.inner2(beta, alpha), f.from_int(2))) < 0) return false;
  return group.depth(beta) > group.depth(alpha);
}

SmallRoots small_roots(const CoxeterGroup& group, std::size_t cap) {
  const Field& f = group.field();
  FieldElem two = f.from_int(2);
  std::vector<RootVec> found;
  std::unordered_set<RootVec, RootVecHash> seen;
  std::deque<RootVec> queue;
  for (int s = 0; s < group.rank(); ++s) {
    found.push_back(group.simple_root(s));
    seen.insert(found.back());
    queue.push_back(found.back());
  }
  while (!queue.empty()) {
    RootVec a = std::move(queue.front());
    queue.pop_front();
    for (int s = 0; s < group.rank(); ++s) {
      FieldElem k = group.inner2(group.simple_root(s), a);  // 2(a_s|a)
      if (f.sign(k) >= 0 || f.sign(f.add(k, two)) <= 0) continue;
      RootVec b = group.reflect(s, a);
      if (!seen.insert(b).second) continue;
      if (found.size() >= cap) {
        throw CapExceeded("more than " + std::to_string(cap) + " small roots");
      }
      found.push_back(b);
      queue.push_back(std::move(b));
    }
  }
  std::vector<std::pair<int, RootVec>> keyed;
  for (auto& r : found) keyed.emplace_back(group.depth(r), std::move(r));
  std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    for (std::size_t i = 0; i < x.second.size(); ++i) {
      int c = f.compare(x.second[i], y.second[i]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  std::vector<RootVec> sorted;
  for (auto& [d, r] : keyed) sorted.push_back(std::move(r));
  return SmallRoots(group, std::move(sorted));
}

std::vector<Wall> elementary_walls(const CoxeterGroup& group, const SmallRoots& sigma) {
  std::vector<Wall> out;
  out.reserve(sigma.size());
  for (const auto& r : sigma.roots()) out.push_back(group.wall_from_root(r));
  return out;
}

ReflectionTable reflection_table(const CoxeterGroup& group, const std::vector<RootVec>& sigma) {
  std::unordered_map<RootVec, int, RootVecHash> index;
  for (std::size_t i = 0; i < sigma.size(); ++i) index.emplace(sigma[i], static_cast<int>(i));
  ReflectionTable table(sigma.size(), std::vector<Transition>(group.rank()));
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    for (int s = 0; s < group.rank(); ++s) {
      if (sigma[a] == group.simple_root(s)) {
        table[a][s] = {Transition::Kind::NegativeSimple, -1};
        continue;
      }
      auto it = index.find(group.reflect(s, sigma[a]));
      if (it != index.end()) table[a][s] = {Transition::Kind::SmallRoot, it->second};
      else table[a][s] = {Transition::Kind::NotSmall, -1};
    }
  }
  return table;
}

}  // namespace coxshadow
