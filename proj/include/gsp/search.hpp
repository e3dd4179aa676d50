#pragma once

// Certified lower-bound search for the pure price of anarchy. Every reported
// ratio comes with a bid vector that passes exact Nash verification and
// allocates to the recorded permutation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsp/auction.hpp"
#include "gsp/equilibrium.hpp"

namespace gsp {

// (2,3,...,n,1): the highest-value advertiser sits in the last slot.
Assignment cyclic_permutation(std::size_t n);

// Assignments whose support system is feasible for this instance. n <= 8.
std::vector<Assignment> enumerate_ne_permutations(const AuctionInstance<Rational>& instance,
                                                  TieBreak tie = TieBreak::ascending_index);

enum class Stencil { central, forward, backward };
std::string to_string(Stencil s);

struct ProbeResult {
  double derivative = 0;
  Stencil stencil = Stencil::central;
};

// Finite difference of efficiency_ratio in values[coordinate]. Falls back to
// a one-sided stencil when one side would leave the ordered, non-negative
// value domain; throws InputError when both sides would.
ProbeResult monotonicity_probe(const AuctionInstance<double>& instance, const Assignment& pi,
                               std::size_t coordinate, double h);

struct SearchConfig {
  std::size_t n = 3;
  std::optional<Assignment> target;  // unset: every assignment of size n
  double grid_step = 0.05;
  std::size_t grid_budget = 0;       // grid instances; 0 disables the grid
  std::size_t samples = 0;           // random instances
  std::size_t target_certified = 0;  // keep sampling past `samples` until reached
  std::size_t max_samples = 2'000'000;
  std::size_t refine_top = 8;
  std::size_t refine_iterations = 200;
  double refine_step = 0.01;
  double shrink = 0.5;
  std::uint64_t seed = 0;
  std::int64_t resolution = 1'000'000;  // coordinates are multiples of 1/resolution
  bool prefilter = true;                // prune with exact weak feasibility before solving
  bool log_rejected = false;            // frontier also keeps uncertified pairs
  bool keep_frontier = true;
  std::size_t workers = 1;
  TieBreak tie = TieBreak::ascending_index;
  std::vector<AuctionInstance<Rational>> seeds;

  // Throws InputError when a field is out of range.
  void validate() const;
};

enum class CandidatePhase { seed, grid, random, refine };
std::string to_string(CandidatePhase p);

struct CandidateRecord {
  std::size_t id = 0;
  CandidatePhase phase = CandidatePhase::random;
  Assignment permutation;
  AuctionInstance<Rational> instance;
  BidProfile<Rational> bids;  // empty when not certified
  Rational ratio{1};
  bool certified = false;
};

struct SearchStats {
  std::size_t instances = 0;
  std::size_t pairs = 0;      // (instance, permutation) pairs considered
  std::size_t pruned = 0;     // rejected by weak feasibility
  std::size_t infeasible = 0;
  std::size_t certified = 0;
  std::size_t refine_evaluations = 0;
};

struct SearchResult {
  Rational best_ratio{1};
  AuctionInstance<Rational> best_instance;
  BidProfile<Rational> witness;
  Assignment permutation;
  std::vector<CandidateRecord> frontier;
  SearchStats stats;
};

enum class PairStatus { pruned, infeasible, certified, rejected_witness };

// Solves one (instance, permutation) pair and certifies the witness.
PairStatus evaluate_pair(const AuctionInstance<Rational>& instance, const Assignment& pi,
                         bool prefilter, TieBreak tie, CandidateRecord& out);

SearchResult poa_lower_bound(const SearchConfig& config);

// Uniform draws sorted descending and divided by the largest, on the
// 1/resolution lattice.
std::vector<Rational> random_descending(std::size_t n, std::mt19937_64& rng,
                                        std::int64_t resolution);

}  // namespace gsp
