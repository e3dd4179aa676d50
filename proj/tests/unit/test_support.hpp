#pragma once

#include <random>
#include <vector>

#include "gsp/auction.hpp"
#include "gsp/numeric.hpp"

namespace gsp::testing {

inline Rational q(const char* s) { return parse_rational(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

// Non-increasing vector on (0,1] with a leading 1, on the 1/denom lattice.
inline std::vector<Rational> descending(std::size_t n, std::mt19937_64& rng, long denom = 100) {
  std::uniform_int_distribution<long> pick(0, denom);
  std::vector<long> xs(n);
  for (auto& x : xs) x = pick(rng);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::vector<Rational> out;
  out.push_back(Rational(1));
  for (std::size_t i = 1; i < n; ++i) out.push_back(Rational(xs[i], denom));
  for (auto& x : out) x.canonicalize();
  return out;
}

inline AuctionInstance<Rational> random_instance(std::size_t n, std::mt19937_64& rng,
                                                 long denom = 100) {
  return AuctionInstance<Rational>(descending(n, rng, denom), descending(n, rng, denom));
}

inline AuctionInstance<Rational> witness() {
  return AuctionInstance<Rational>(qs({"1", "0.53", "0.15", "0"}), qs({"1", "0.55", "0.47", "0.47"}));
}

inline std::vector<Rational> witness_bids() { return qs({"0", "0.53", "0.15", "0"}); }

}  // namespace gsp::testing
