#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsp {

// Malformed or out-of-contract input (bad lengths, unsorted vectors, bad JSON).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bid above the bidder's value, or a negative bid.
class ConservativenessViolation : public std::runtime_error {
 public:
  ConservativenessViolation(std::size_t advertiser, const std::string& what)
      : std::runtime_error(what), advertiser_(advertiser) {}

  // Zero-based index of the offending advertiser.
  std::size_t advertiser() const { return advertiser_; }

 private:
  std::size_t advertiser_;
};

// Efficiency ratio requested for an assignment with zero welfare.
class DegenerateInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the mathematical domain of a closed-form expression.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace gsp
