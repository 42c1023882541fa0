#include "coxshadow/analysis.hpp"

#include "coxshadow/conetype.hpp"
#include "coxshadow/shi.hpp"

namespace coxshadow {

namespace {

bool fits(const Dfa& d, int rank, std::size_t roots) {
  if (d.alphabet() != rank || d.size() == 0) return false;
  for (int q = 0; q < d.size(); ++q)
    for (int i : d.meta(q))
      if (i < 0 || static_cast<std::size_t>(i) >= roots) return false;
  return true;
}

}  // namespace

Analysis::Analysis(CoxeterSystem sys, AnalysisOptions opts)
    : group_(std::move(sys)), sigma_(small_roots(group_, opts.max_roots)) {
  std::optional<Dfa> bh, minimal;
  if (opts.cache_dir) {
    AutomatonCache cache(*opts.cache_dir);
    try {
      bh = cache.load(group_.system(), "brink-howlett");
      minimal = cache.load(group_.system(), "minimal");
    } catch (const ParseError&) {
      bh.reset();
      minimal.reset();
    }
    if (bh && minimal && fits(*bh, group_.rank(), sigma_.size()) &&
        minimal->alphabet() == group_.rank()) {
      from_cache_ = true;
    } else {
      bh.reset();
      minimal.reset();
    }
  }
  if (!from_cache_) {
    bh = brink_howlett(group_, sigma_, opts.max_states);
    minimal = minimize(*bh);
    if (opts.cache_dir) {
      AutomatonCache cache(*opts.cache_dir);
      cache.store(group_.system(), *bh);
      cache.store(group_.system(), *minimal);
    }
  }
  bh_ = std::move(*bh);
  minimal_ = std::move(*minimal);
  M_ = enumerate_M(group_, sigma_, bh_);
  gates_ = coxshadow::gates(group_, minimal_);
}

}  // namespace coxshadow
