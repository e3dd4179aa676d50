#pragma once

// Closed-form quantities for the cyclic assignment (2,3,...,k,1): the mean
// consecutive CTR ratio lambda, the worst-case ratio obtained once values are
// eliminated, and the two lambda bounds on it.

#include <cstddef>
#include <string>
#include <vector>

#include "gsp/errors.hpp"
#include "gsp/numeric.hpp"

namespace gsp {

namespace detail {

template <Scalar T>
void check_ctr_prefix(const std::vector<T>& ctrs, std::size_t min_k) {
  if (ctrs.size() < min_k) {
    throw DomainError("need at least " + std::to_string(min_k) + " CTRs");
  }
  for (std::size_t i = 0; i < ctrs.size(); ++i) {
    if (ctrs[i] < T(0)) throw DomainError("CTRs must be non-negative");
    if (i > 0 && ctrs[i] > ctrs[i - 1]) throw DomainError("CTRs must be non-increasing");
  }
  // A trailing zero is fine (final ratio is 0); a zero before it divides by zero.
  for (std::size_t i = 0; i + 1 < ctrs.size(); ++i) {
    if (ctrs[i] == T(0)) {
      throw DomainError("zero CTR at slot " + std::to_string(i + 1) +
                        " makes a consecutive ratio undefined");
    }
  }
}

template <Scalar T>
T sum_consecutive_ratios(const std::vector<T>& ctrs) {
  T total(0);
  for (std::size_t i = 0; i + 1 < ctrs.size(); ++i) total += ctrs[i + 1] / ctrs[i];
  return total;
}

}  // namespace detail

// (1/(k-1)) * Sigma_{i<k} ctrs[i+1]/ctrs[i]
template <Scalar T>
T lambda(const std::vector<T>& ctrs) {
  detail::check_ctr_prefix(ctrs, 2);
  return detail::sum_consecutive_ratios(ctrs) / T(static_cast<long>(ctrs.size() - 1));
}

// (Sigma a_i - a_k * Sigma_{i<k} a_{i+1}/a_i) / (Sigma a_i - (k-1) a_k)
template <Scalar T>
T ratio_formula(const std::vector<T>& ctrs) {
  detail::check_ctr_prefix(ctrs, 3);
  const std::size_t k = ctrs.size();
  T total(0);
  for (const auto& a : ctrs) total += a;
  const T& last = ctrs.back();
  T numerator = total - last * detail::sum_consecutive_ratios(ctrs);
  T denominator = total - T(static_cast<long>(k - 1)) * last;
  if (!(denominator > T(0))) throw DomainError("ratio formula denominator is not positive");
  return numerator / denominator;
}

template <Scalar T>
struct LambdaBounds {
  T bound_a{0};  // ((k-1)/(k-2)) * lambda
  T bound_b{0};  // k - (k-1) * lambda
  T min_bound{0};
};

template <Scalar T>
LambdaBounds<T> poa_bounds(std::size_t k, const T& lam) {
  if (k < 3) throw DomainError("bounds need k >= 3");
  if (!(lam > T(0)) || lam > T(1)) throw DomainError("lambda must lie in (0, 1]");
  const T km1(static_cast<long>(k - 1));
  const T km2(static_cast<long>(k - 2));
  LambdaBounds<T> out;
  out.bound_a = km1 / km2 * lam;
  out.bound_b = T(static_cast<long>(k)) - km1 * lam;
  out.min_bound = out.bound_a < out.bound_b ? out.bound_a : out.bound_b;
  return out;
}

struct BoundsRecord {
  std::size_t k = 0;
  double lambda = 0;
  double f_closed = 0;
  double bound_a = 0;
  double bound_b = 0;
  double min_bound = 0;
};

BoundsRecord bounds_record(const std::vector<double>& ctrs);

inline constexpr const char* kBoundsCsvHeader = "k,lambda,f_closed,bound_a,bound_b,min_bound";
std::string to_csv_row(const BoundsRecord& r);

// (x+a*v)/(y+b*v) <= (x+a*v')/(y+b*v') versus the side condition b*x >= a*y,
// which for b > 0 reads x/y >= a/b.
template <Scalar T>
struct MonotonicityVerdict {
  T lhs{0};
  T rhs{0};
  bool inequality_holds = false;
  bool correction_holds = false;
};

template <Scalar T>
MonotonicityVerdict<T> rational_monotonicity_check(const T& x, const T& y, const T& a,
                                                   const T& b, const T& v, const T& v_prime) {
  if (!(y > T(0))) throw DomainError("need y > 0");
  T den_v = y + b * v;
  T den_vp = y + b * v_prime;
  if (!(den_v > T(0)) || !(den_vp > T(0))) throw DomainError("denominators must be positive");
  if (a > b) throw DomainError("need a <= b");
  if (v < v_prime) throw DomainError("need v >= v'");
  MonotonicityVerdict<T> out;
  out.lhs = (x + a * v) / den_v;
  out.rhs = (x + a * v_prime) / den_vp;
  out.inequality_holds = out.lhs <= out.rhs;
  out.correction_holds = b * x >= a * y;
  return out;
}

}  // namespace gsp
