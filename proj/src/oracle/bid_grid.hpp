#pragma once

// Brute-force equilibrium oracle over a bid lattice. Values, CTRs and bids
// are integers in hundredths, utilities integers in ten-thousandths, so the
// search is exact. Shares no code with the Fourier-Motzkin path.

#include <cstdint>
#include <map>
#include <vector>

namespace gsp::oracle {

struct GridInstance {
  std::vector<int> values;  // hundredths, non-increasing
  std::vector<int> ctrs;    // hundredths, non-increasing
};

struct GridBest {
  std::int64_t min_regret = 0;  // ten-thousandths
  std::vector<int> bids;        // hundredths, a profile attaining min_regret
};

// For every permutation (slot -> advertiser, zero-based) reached by some
// lattice profile 0 <= b_i <= v_i, the smallest maximum regret among the
// profiles that allocate to it (ties: lower index ranks higher).
std::map<std::vector<int>, GridBest> min_regret_by_permutation(const GridInstance& instance);

}  // namespace gsp::oracle
