#include "gsp/linear_system.hpp"

#include <sstream>

#include "gsp/errors.hpp"

namespace gsp {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
  }
  return "?";
}

Relation parse_relation(const std::string& text) {
  if (text == "<=") return Relation::le;
  if (text == "<") return Relation::lt;
  if (text == ">=") return Relation::ge;
  if (text == ">") return Relation::gt;
  throw InputError("unknown relation '" + text + "'");
}

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::bid_nonnegative: return "bid_nonnegative";
    case ConstraintKind::bid_below_value: return "bid_below_value";
    case ConstraintKind::ordering: return "ordering";
    case ConstraintKind::no_gain_moving_up: return "no_gain_moving_up";
    case ConstraintKind::no_gain_moving_down: return "no_gain_moving_down";
    case ConstraintKind::other: return "other";
  }
  return "other";
}

ConstraintKind parse_constraint_kind(const std::string& text) {
  for (auto k : {ConstraintKind::bid_nonnegative, ConstraintKind::bid_below_value,
                 ConstraintKind::ordering, ConstraintKind::no_gain_moving_up,
                 ConstraintKind::no_gain_moving_down, ConstraintKind::other}) {
    if (to_string(k) == text) return k;
  }
  throw InputError("unknown constraint kind '" + text + "'");
}

std::string describe(const Provenance& p) {
  std::ostringstream os;
  os << to_string(p.kind) << " a" << p.advertiser + 1;
  switch (p.kind) {
    case ConstraintKind::ordering:
      os << " s" << p.slot + 1 << ">s" << p.slot + 2;
      break;
    case ConstraintKind::no_gain_moving_up:
    case ConstraintKind::no_gain_moving_down:
      os << " s" << p.slot + 1 << "->s" << p.target + 1;
      break;
    default:
      break;
  }
  return os.str();
}

void LinearSystem::add(LinearConstraint row) {
  if (row.coeffs.size() != variables_.size()) {
    throw InputError("constraint has " + std::to_string(row.coeffs.size()) +
                     " coefficients for " + std::to_string(variables_.size()) + " variables");
  }
  constraints_.push_back(std::move(row));
}

bool row_satisfied(const LinearConstraint& row, const std::vector<Rational>& point) {
  Rational lhs(0);
  for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
    if (row.coeffs[j] != 0) lhs += row.coeffs[j] * point[j];
  }
  switch (row.relation) {
    case Relation::le: return lhs <= row.constant;
    case Relation::lt: return lhs < row.constant;
    case Relation::ge: return lhs >= row.constant;
    case Relation::gt: return lhs > row.constant;
  }
  return false;
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& point) const {
  if (point.size() != variables_.size()) return false;
  for (const auto& row : constraints_) {
    if (!row_satisfied(row, point)) return false;
  }
  return true;
}

std::string LinearSystem::listing() const {
  std::ostringstream os;
  for (const auto& row : constraints_) {
    os << '[' << describe(row.provenance) << "] ";
    bool first = true;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
      if (row.coeffs[j] == 0) continue;
      Rational c = row.coeffs[j];
      if (!first) {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      os << format_rational(c) << '*' << variables_[j];
      first = false;
    }
    if (first) os << '0';
    os << ' ' << to_string(row.relation) << ' ' << format_rational(row.constant) << '\n';
  }
  return os.str();
}

}  // namespace gsp
