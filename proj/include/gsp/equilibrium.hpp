#pragma once

// Pure Nash verification for GSP with conservative bidders.
//
// Deviation model: an advertiser moving up to slot j < current pays the bid
// of the current slot-j occupant; moving down to slot j > current pays the
// bid of the current slot-(j+1) occupant (0 past the last slot). A target
// whose exact attainment would need a strict overbid of an equal bid, or a
// bid squeezed between two equal bids in the wrong index order, is scored at
// its supremum and flagged. With this model the Nash conditions are linear
// in the bids, which is what support_system() emits.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gsp/auction.hpp"
#include "gsp/linear_system.hpp"

namespace gsp {

template <Scalar T>
struct SlotOption {
  std::size_t slot = 0;
  T utility{0};
  T price{0};
  bool reachable = true;  // false when the price exceeds the deviator's value
  bool supremum = false;  // utility is a supremum, not attained by a single bid
};

template <Scalar T>
struct DeviationResult {
  std::size_t advertiser = 0;
  std::size_t current_slot = 0;
  T current_utility{0};
  std::size_t best_slot = 0;
  T best_utility{0};
  bool supremum = false;
  std::vector<SlotOption<T>> options;  // indexed by slot
};

template <Scalar T>
struct AdvertiserRecord {
  std::size_t advertiser = 0;
  std::size_t slot = 0;
  T current_utility{0};
  std::size_t best_slot = 0;
  T best_utility{0};
  T regret{0};
  bool supremum = false;
};

template <Scalar T>
struct NashReport {
  Assignment assignment;
  std::vector<AdvertiserRecord<T>> records;  // indexed by advertiser
  T max_regret{0};
  T eps{0};
  bool is_nash = true;
};

template <Scalar T>
struct WeakFeasibilityReport {
  bool holds = true;
  // slack[i][j] = ctrs[j]*v[pi(j)] - ctrs[i]*(v[pi(j)] - v[pi(i)]) for slots i < j; 0 elsewhere.
  std::vector<std::vector<T>> slack;
  std::size_t worst_upper = 0;
  std::size_t worst_lower = 0;
  T worst_slack{0};
};

namespace detail {

template <Scalar T>
DeviationResult<T> deviation_options(const AuctionInstance<T>& instance,
                                     const BidProfile<T>& bids, const Assignment& pi,
                                     std::size_t adv, TieBreak tie) {
  const std::size_t n = instance.size();
  const T& value = instance.value(adv);
  const std::size_t s = pi.slot_of(adv);
  auto bid_at = [&](std::size_t slot) -> T {
    return slot < n ? bids[pi.advertiser_at(slot)] : T(0);
  };

  DeviationResult<T> res;
  res.advertiser = adv;
  res.current_slot = s;
  res.current_utility = instance.ctr(s) * (value - bid_at(s + 1));
  res.options.resize(n);

  for (std::size_t j = 0; j < n; ++j) {
    SlotOption<T>& opt = res.options[j];
    opt.slot = j;
    if (j == s) {
      opt.price = bid_at(s + 1);
      opt.utility = res.current_utility;
      continue;
    }
    if (j < s) {
      // Outbid the slot-j occupant.
      const std::size_t rival = pi.advertiser_at(j);
      opt.price = bids[rival];
      opt.reachable = opt.price <= value;
      opt.supremum = opt.price == value && !wins_tie(adv, rival, tie);
    } else {
      // Land between the current occupants of slots j and j+1.
      opt.price = bid_at(j + 1);
      const std::size_t above = pi.advertiser_at(j);
      const T& upper = bids[above];
      if (upper == opt.price) {
        bool below_ok = wins_tie(above, adv, tie);
        bool above_ok = j + 1 >= n || wins_tie(adv, pi.advertiser_at(j + 1), tie);
        opt.supremum = !(below_ok && above_ok);
      }
    }
    opt.utility = instance.ctr(j) * (value - opt.price);
  }

  res.best_slot = s;
  res.best_utility = res.current_utility;
  for (const auto& opt : res.options) {
    if (opt.reachable && opt.utility > res.best_utility) {
      res.best_slot = opt.slot;
      res.best_utility = opt.utility;
      res.supremum = opt.supremum;
    }
  }
  return res;
}

}  // namespace detail

// Best attainable utility for advertiser `adv` over all target slots, the
// current slot included. Ties prefer staying, then the lowest slot index.
template <Scalar T>
DeviationResult<T> best_deviation(const AuctionInstance<T>& instance, const BidProfile<T>& bids,
                                  std::size_t adv, TieBreak tie = TieBreak::ascending_index) {
  if (adv >= instance.size()) {
    throw InputError("advertiser index " + std::to_string(adv + 1) + " out of range");
  }
  Assignment pi = allocate(instance, bids, tie);
  return detail::deviation_options(instance, bids, pi, adv, tie);
}

template <Scalar T>
NashReport<T> verify_nash(const AuctionInstance<T>& instance, const BidProfile<T>& bids,
                          T eps = NumericTraits<T>::default_eps(),
                          TieBreak tie = TieBreak::ascending_index) {
  if (eps < T(0)) throw InputError("epsilon must be non-negative");
  NashReport<T> report;
  report.assignment = allocate(instance, bids, tie);
  report.eps = eps;
  report.records.reserve(instance.size());
  for (std::size_t adv = 0; adv < instance.size(); ++adv) {
    auto dev = detail::deviation_options(instance, bids, report.assignment, adv, tie);
    AdvertiserRecord<T> rec;
    rec.advertiser = adv;
    rec.slot = dev.current_slot;
    rec.current_utility = dev.current_utility;
    rec.best_slot = dev.best_slot;
    rec.best_utility = dev.best_utility;
    rec.regret = dev.best_utility - dev.current_utility;
    rec.supremum = dev.supremum;
    if (rec.regret > report.max_regret) report.max_regret = rec.regret;
    report.records.push_back(std::move(rec));
  }
  report.is_nash = report.max_regret <= eps;
  return report;
}

// Leme-Tardos condition: for every pair of slots i < j,
// ctrs[j]*v[pi(j)] >= ctrs[i]*(v[pi(j)] - v[pi(i)]).
template <Scalar T>
WeakFeasibilityReport<T> weakly_feasible(const AuctionInstance<T>& instance,
                                         const Assignment& pi,
                                         T eps = NumericTraits<T>::default_eps()) {
  const std::size_t n = instance.size();
  if (pi.size() != n) throw InputError("assignment size mismatch");
  WeakFeasibilityReport<T> rep;
  rep.slack.assign(n, std::vector<T>(n, T(0)));
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    const T& vi = instance.value(pi.advertiser_at(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const T& vj = instance.value(pi.advertiser_at(j));
      T slack = instance.ctr(j) * vj - instance.ctr(i) * (vj - vi);
      if (first || slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_upper = i;
        rep.worst_lower = j;
        first = false;
      }
      rep.slack[i][j] = std::move(slack);
    }
  }
  rep.holds = first || rep.worst_slack >= -eps;
  return rep;
}

// Exact-only fast path of weakly_feasible used to prune search candidates.
bool weakly_feasible_exact(const AuctionInstance<Rational>& instance, const Assignment& pi);

// Linear inequalities over b whose solutions are exactly the conservative
// profiles that allocate to `pi` under `tie` and are Nash in the model above.
LinearSystem support_system(const AuctionInstance<Rational>& instance, const Assignment& pi,
                            TieBreak tie = TieBreak::ascending_index);

enum class DynamicsStatus { converged, max_rounds_reached };

std::string to_string(DynamicsStatus s);

struct DynamicsConfig {
  std::size_t max_rounds = 100;
  std::uint64_t seed = 0;
  bool shuffle_each_round = true;  // false: fixed order 1..n every round
  TieBreak tie = TieBreak::ascending_index;
};

template <Scalar T>
struct DynamicsMove {
  std::size_t round = 0;
  std::size_t advertiser = 0;
  T old_bid{0};
  T new_bid{0};
  std::size_t target_slot = 0;
};

template <Scalar T>
struct DynamicsResult {
  DynamicsStatus status = DynamicsStatus::max_rounds_reached;
  std::size_t rounds_with_change = 0;
  std::vector<BidProfile<T>> trajectory;  // initial profile, then one entry per move
  std::vector<DynamicsMove<T>> moves;
  NashReport<T> terminal;
};

// Sequential best response. The mover bids the midpoint of the interval of
// bids that lands it in its best target slot. A round with no moves ends the
// run.
template <Scalar T>
DynamicsResult<T> best_response_dynamics(const AuctionInstance<T>& instance,
                                          BidProfile<T> bids, const DynamicsConfig& config,
                                          T eps = NumericTraits<T>::default_eps()) {
  check_conservative(instance, bids);
  const std::size_t n = instance.size();
  DynamicsResult<T> out;
  out.trajectory.push_back(bids);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  for (std::size_t round = 0; round < config.max_rounds; ++round) {
    if (config.shuffle_each_round) std::shuffle(order.begin(), order.end(), rng);
    bool changed = false;
    for (std::size_t adv : order) {
      Assignment pi = allocate(instance, bids, config.tie);
      auto dev = detail::deviation_options(instance, bids, pi, adv, config.tie);
      if (!(dev.best_utility > dev.current_utility + eps)) continue;

      // Bids of everyone else, in rank order.
      std::vector<T> others;
      others.reserve(n - 1);
      for (std::size_t k = 0; k < n; ++k) {
        if (pi.advertiser_at(k) != adv) others.push_back(bids[pi.advertiser_at(k)]);
      }
      const std::size_t j = dev.best_slot;
      const T& value = instance.value(adv);
      T lower = j < others.size() ? others[j] : T(0);
      T upper = j == 0 ? value : others[j - 1];
      if (upper > value) upper = value;
      T next = (lower + upper) / T(2);
      if (next == bids[adv]) continue;

      out.moves.push_back({round, adv, bids[adv], next, j});
      bids[adv] = std::move(next);
      out.trajectory.push_back(bids);
      changed = true;
    }
    if (!changed) {
      out.status = DynamicsStatus::converged;
      break;
    }
    ++out.rounds_with_change;
  }
  out.terminal = verify_nash(instance, bids, eps, config.tie);
  return out;
}

}  // namespace gsp
