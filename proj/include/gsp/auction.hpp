#pragma once

// One round of a Generalized Second Price auction with n advertisers and n
// slots. Slots are allocated by descending bid; the occupant of slot k pays
// the bid of the occupant of slot k+1 per click (the last slot pays 0).
//
// Indices are zero-based everywhere in the API. Rendering to the one-based
// notation (advertiser 1 is the highest-value one) happens at the edges.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gsp/errors.hpp"
#include "gsp/numeric.hpp"

namespace gsp {

enum class TieBreak {
  ascending_index,   // equal bids: lower advertiser index ranks higher
  descending_index,  // reversed rule; exists for fault injection
};

enum class Normalization {
  unit,     // require values[0] == ctrs[0] == 1
  rescale,  // divide values and ctrs by their leading (largest) entries
  none,     // any positive scale; ordering and non-negativity still enforced
};

// Bijection slot -> advertiser.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::size_t> slot_to_adv);

  static Assignment identity(std::size_t n);
  static Assignment from_one_based(const std::vector<int>& slots);

  std::size_t size() const { return slot_to_adv_.size(); }
  std::size_t advertiser_at(std::size_t slot) const { return slot_to_adv_[slot]; }
  std::size_t slot_of(std::size_t advertiser) const { return adv_to_slot_[advertiser]; }
  const std::vector<std::size_t>& slot_to_adv() const { return slot_to_adv_; }

  std::vector<int> one_based() const;
  // "(2,3,1,4)"
  std::string to_string() const;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.slot_to_adv_ == b.slot_to_adv_;
  }
  friend auto operator<=>(const Assignment& a, const Assignment& b) {
    return a.slot_to_adv_ <=> b.slot_to_adv_;
  }

 private:
  std::vector<std::size_t> slot_to_adv_;
  std::vector<std::size_t> adv_to_slot_;
};

// Parses "2,3,1,4" or "(2,3,1,4)" (one-based).
Assignment parse_assignment(const std::string& text);

// All n! assignments in lexicographic order.
std::vector<Assignment> all_assignments(std::size_t n);

template <Scalar T>
class AuctionInstance {
 public:
  AuctionInstance() = default;
  AuctionInstance(std::vector<T> values, std::vector<T> ctrs,
                  Normalization norm = Normalization::unit)
      : values_(std::move(values)), ctrs_(std::move(ctrs)) {
    validate(norm);
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  const std::vector<T>& ctrs() const { return ctrs_; }
  const T& value(std::size_t advertiser) const { return values_[advertiser]; }
  const T& ctr(std::size_t slot) const { return ctrs_[slot]; }

  // Sigma_k ctrs[k] * values[k]: sorted values paired with sorted CTRs.
  T optimal_welfare() const {
    T total(0);
    for (std::size_t k = 0; k < size(); ++k) total += ctrs_[k] * values_[k];
    return total;
  }

  friend bool operator==(const AuctionInstance& a, const AuctionInstance& b) {
    return a.values_ == b.values_ && a.ctrs_ == b.ctrs_;
  }

 private:
  void validate(Normalization norm);

  std::vector<T> values_;
  std::vector<T> ctrs_;
};

template <Scalar T>
using BidProfile = std::vector<T>;

template <Scalar T>
struct Outcome {
  Assignment assignment;
  std::vector<T> payments;   // per click, per slot
  std::vector<T> utilities;  // per advertiser
  T welfare{0};
};

namespace detail {

template <Scalar T>
void check_non_increasing(const std::vector<T>& xs, const char* name) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < T(0)) throw InputError(std::string(name) + " must be non-negative");
    if (i > 0 && xs[i] > xs[i - 1]) {
      throw InputError(std::string(name) + " must be non-increasing (entry " +
                       std::to_string(i + 1) + ")");
    }
  }
}

}  // namespace detail

template <Scalar T>
void AuctionInstance<T>::validate(Normalization norm) {
  if (values_.empty()) throw InputError("instance needs at least one advertiser");
  if (values_.size() != ctrs_.size()) {
    throw InputError("values and ctrs differ in length (" + std::to_string(values_.size()) +
                     " vs " + std::to_string(ctrs_.size()) + ")");
  }
  detail::check_non_increasing(values_, "values");
  detail::check_non_increasing(ctrs_, "ctrs");
  switch (norm) {
    case Normalization::unit:
      if (values_[0] != T(1) || ctrs_[0] != T(1)) {
        throw InputError("values[1] and ctrs[1] must equal 1 (use normalization to rescale)");
      }
      break;
    case Normalization::rescale: {
      if (values_[0] == T(0) || ctrs_[0] == T(0)) {
        throw InputError("cannot normalize an all-zero vector");
      }
      T vmax = values_[0];
      T cmax = ctrs_[0];
      for (auto& v : values_) v /= vmax;
      for (auto& c : ctrs_) c /= cmax;
      break;
    }
    case Normalization::none:
      break;
  }
}

template <Scalar T>
void check_conservative(const AuctionInstance<T>& instance, const BidProfile<T>& bids) {
  if (bids.size() != instance.size()) {
    throw InputError("bid vector length " + std::to_string(bids.size()) +
                     " does not match instance size " + std::to_string(instance.size()));
  }
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i] < T(0)) {
      throw ConservativenessViolation(i, "advertiser " + std::to_string(i + 1) +
                                             " has a negative bid");
    }
    if (bids[i] > instance.value(i)) {
      throw ConservativenessViolation(i, "advertiser " + std::to_string(i + 1) +
                                             " bids above value");
    }
  }
}

// True when advertiser a ranks above advertiser b at equal bids.
inline bool wins_tie(std::size_t a, std::size_t b, TieBreak tie) {
  return tie == TieBreak::ascending_index ? a < b : a > b;
}

template <Scalar T>
Assignment allocate(const AuctionInstance<T>& instance, const BidProfile<T>& bids,
                    TieBreak tie = TieBreak::ascending_index) {
  check_conservative(instance, bids);
  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bids[a] != bids[b]) return bids[a] > bids[b];
    return wins_tie(a, b, tie);
  });
  return Assignment(std::move(order));
}

template <Scalar T>
T welfare(const AuctionInstance<T>& instance, const Assignment& assignment) {
  T total(0);
  for (std::size_t k = 0; k < assignment.size(); ++k) {
    total += instance.ctr(k) * instance.value(assignment.advertiser_at(k));
  }
  return total;
}

template <Scalar T>
Outcome<T> settle(const AuctionInstance<T>& instance, const BidProfile<T>& bids,
                  TieBreak tie = TieBreak::ascending_index) {
  Outcome<T> out;
  out.assignment = allocate(instance, bids, tie);
  const std::size_t n = instance.size();
  out.payments.assign(n, T(0));
  out.utilities.assign(n, T(0));
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n) out.payments[k] = bids[out.assignment.advertiser_at(k + 1)];
    std::size_t adv = out.assignment.advertiser_at(k);
    out.utilities[adv] = instance.ctr(k) * (instance.value(adv) - out.payments[k]);
  }
  out.welfare = welfare(instance, out.assignment);
  return out;
}

namespace detail {

template <Scalar T>
T ratio_or_throw(const T& optimal, const T& achieved) {
  if (achieved == T(0)) {
    throw DegenerateInstance("assignment welfare is zero; efficiency ratio undefined");
  }
  return optimal / achieved;
}

}  // namespace detail

// Optimal welfare over the welfare of `assignment` (slot -> advertiser).
template <Scalar T>
T efficiency_ratio(const AuctionInstance<T>& instance, const Assignment& assignment) {
  if (assignment.size() != instance.size()) throw InputError("assignment size mismatch");
  return detail::ratio_or_throw(instance.optimal_welfare(), welfare(instance, assignment));
}

// Same ratio with the permutation read as advertiser -> slot, i.e. the
// denominator is Sigma_i ctrs[pi(i)] * values[i].
template <Scalar T>
T efficiency_ratio_by_advertiser(const AuctionInstance<T>& instance,
                                 const Assignment& assignment) {
  if (assignment.size() != instance.size()) throw InputError("assignment size mismatch");
  T achieved(0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    achieved += instance.ctr(assignment.advertiser_at(i)) * instance.value(i);
  }
  return detail::ratio_or_throw(instance.optimal_welfare(), achieved);
}

template <Scalar T>
AuctionInstance<Rational> to_rational(const AuctionInstance<T>& instance);

template <>
inline AuctionInstance<Rational> to_rational(const AuctionInstance<Rational>& instance) {
  return instance;
}

template <>
inline AuctionInstance<Rational> to_rational(const AuctionInstance<double>& instance) {
  std::vector<Rational> v, c;
  for (double x : instance.values()) v.push_back(rational_from_double(x));
  for (double x : instance.ctrs()) c.push_back(rational_from_double(x));
  return AuctionInstance<Rational>(std::move(v), std::move(c), Normalization::none);
}

inline AuctionInstance<double> to_double(const AuctionInstance<Rational>& instance) {
  return AuctionInstance<double>(to_doubles(instance.values()), to_doubles(instance.ctrs()),
                                 Normalization::none);
}

}  // namespace gsp
