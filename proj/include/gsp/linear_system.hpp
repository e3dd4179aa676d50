#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gsp/numeric.hpp"

namespace gsp {

enum class Relation { le, lt, ge, gt };

std::string to_string(Relation r);
Relation parse_relation(const std::string& text);

// Which equilibrium condition produced a row.
enum class ConstraintKind {
  bid_nonnegative,    // 0 <= b_i
  bid_below_value,    // b_i <= v_i
  ordering,           // slot-k occupant outbids slot-(k+1) occupant
  no_gain_moving_up,  // occupant of `slot` cannot profit from taking `target` < slot
  no_gain_moving_down,
  other,
};

std::string to_string(ConstraintKind k);
ConstraintKind parse_constraint_kind(const std::string& text);

struct Provenance {
  ConstraintKind kind = ConstraintKind::other;
  std::size_t advertiser = 0;  // zero-based
  std::size_t slot = 0;        // zero-based
  std::size_t target = 0;      // zero-based; meaningful for the no-gain rows
};

// coeffs . x  <relation>  constant
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::le;
  Rational constant;
  Provenance provenance;
};

class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> variables) : variables_(std::move(variables)) {}

  std::size_t dimension() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  // Throws InputError when the row does not match the declared variables.
  void add(LinearConstraint row);

  // Exact check of one point against every row.
  bool satisfied_by(const std::vector<Rational>& point) const;

  // One row per line, e.g. "[no_gain_moving_up a1 s3->s1] 1*b2 >= 53/100".
  std::string listing() const;

 private:
  std::vector<std::string> variables_;
  std::vector<LinearConstraint> constraints_;
};

bool row_satisfied(const LinearConstraint& row, const std::vector<Rational>& point);
std::string describe(const Provenance& p);

}  // namespace gsp
