#include "oracle/bid_grid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gsp::oracle {

namespace {

std::int64_t max_regret(const GridInstance& g, const std::vector<int>& bids,
                        const std::vector<int>& rank) {
  const int n = static_cast<int>(bids.size());
  auto bid_in = [&](int slot) { return slot < n ? bids[rank[slot]] : 0; };
  std::int64_t worst = 0;
  for (int s = 0; s < n; ++s) {
    const int adv = rank[s];
    const std::int64_t v = g.values[adv];
    const std::int64_t now = g.ctrs[s] * (v - bid_in(s + 1));
    std::int64_t best = now;
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      std::int64_t price = j < s ? bid_in(j) : bid_in(j + 1);
      if (j < s && price > v) continue;
      best = std::max(best, g.ctrs[j] * (v - price));
    }
    worst = std::max(worst, best - now);
  }
  return worst;
}

}  // namespace

std::map<std::vector<int>, GridBest> min_regret_by_permutation(const GridInstance& g) {
  const int n = static_cast<int>(g.values.size());
  if (n == 0 || g.ctrs.size() != g.values.size()) throw std::invalid_argument("bad grid instance");
  std::map<std::vector<int>, GridBest> best;
  std::vector<int> bids(n, 0);
  std::vector<int> rank(n);
  while (true) {
    std::iota(rank.begin(), rank.end(), 0);
    std::sort(rank.begin(), rank.end(), [&](int a, int b) {
      return bids[a] != bids[b] ? bids[a] > bids[b] : a < b;
    });
    std::int64_t r = max_regret(g, bids, rank);
    auto it = best.find(rank);
    if (it == best.end()) {
      best.emplace(rank, GridBest{r, bids});
    } else if (r < it->second.min_regret) {
      it->second = GridBest{r, bids};
    }
    // Odometer over 0..values[i].
    int i = 0;
    while (i < n && bids[i] == g.values[i]) bids[i++] = 0;
    if (i == n) break;
    ++bids[i];
  }
  return best;
}

}  // namespace gsp::oracle
