#pragma once

// End-to-end reproduction checks. Each criterion has a fixed tolerance and a
// wall-clock budget; exceeding the budget fails the criterion.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gsp/auction.hpp"

namespace gsp::acceptance {

struct Options {
  TieBreak tie = TieBreak::ascending_index;  // descending_index injects a fault
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct CriterionInfo {
  int id = 0;
  std::string title;
  double budget_seconds = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string expected;
  std::string observed;
  std::string note;
  double seconds = 0;
  double budget_seconds = 0;
};

std::vector<CriterionInfo> list_criteria();
CriterionResult run_criterion(int id, const Options& options = {});

// "[PASS] 1 witness ... | expected ... | observed ... (0.01s / 1s)"
std::string format_row(const CriterionResult& r);

// The reported witness (values, CTRs, bids) padded with value-0, CTR-0.47,
// bid-0 advertisers up to n; n = 3 truncates it.
AuctionInstance<Rational> witness_instance(std::size_t n = 4);
BidProfile<Rational> witness_bids(std::size_t n = 4);

}  // namespace gsp::acceptance
