#include "gsp/equilibrium.hpp"

namespace gsp {

std::string to_string(DynamicsStatus s) {
  return s == DynamicsStatus::converged ? "converged" : "max_rounds_reached";
}

bool weakly_feasible_exact(const AuctionInstance<Rational>& instance, const Assignment& pi) {
  const std::size_t n = instance.size();
  Rational lhs, rhs;
  for (std::size_t j = 1; j < n; ++j) {
    const Rational& vj = instance.value(pi.advertiser_at(j));
    lhs = instance.ctr(j) * vj;
    for (std::size_t i = 0; i < j; ++i) {
      const Rational& vi = instance.value(pi.advertiser_at(i));
      if (vi >= vj) continue;
      rhs = vj - vi;
      rhs *= instance.ctr(i);
      if (lhs < rhs) return false;
    }
  }
  return true;
}

LinearSystem support_system(const AuctionInstance<Rational>& instance, const Assignment& pi,
                            TieBreak tie) {
  const std::size_t n = instance.size();
  if (pi.size() != n) throw InputError("assignment size mismatch");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("b" + std::to_string(i + 1));
  LinearSystem sys(std::move(names));

  auto row = [&](Relation rel, Rational constant, Provenance prov) {
    LinearConstraint c;
    c.coeffs.assign(n, Rational(0));
    c.relation = rel;
    c.constant = std::move(constant);
    c.provenance = prov;
    return c;
  };

  for (std::size_t adv = 0; adv < n; ++adv) {
    std::size_t slot = pi.slot_of(adv);
    auto lo = row(Relation::ge, Rational(0), {ConstraintKind::bid_nonnegative, adv, slot, slot});
    lo.coeffs[adv] = 1;
    sys.add(std::move(lo));
    auto hi = row(Relation::le, instance.value(adv),
                  {ConstraintKind::bid_below_value, adv, slot, slot});
    hi.coeffs[adv] = 1;
    sys.add(std::move(hi));
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t upper = pi.advertiser_at(k);
    std::size_t lower = pi.advertiser_at(k + 1);
    Relation rel = wins_tie(upper, lower, tie) ? Relation::ge : Relation::gt;
    auto c = row(rel, Rational(0), {ConstraintKind::ordering, upper, k, k + 1});
    c.coeffs[upper] = 1;
    c.coeffs[lower] = -1;
    sys.add(std::move(c));
  }

  // Staying at slot i is worth ctrs[i]*(v - b[pi(i+1)]). Each alternative
  // ctrs[j]*(v - price_j) must not beat it:
  //   ctrs[j]*price_j - ctrs[i]*b[pi(i+1)] >= (ctrs[j] - ctrs[i]) * v
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t adv = pi.advertiser_at(i);
    const Rational& v = instance.value(adv);
    const Rational& ci = instance.ctr(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Rational& cj = instance.ctr(j);
      bool up = j < i;
      Provenance prov{up ? ConstraintKind::no_gain_moving_up : ConstraintKind::no_gain_moving_down,
                      adv, i, j};
      auto c = row(Relation::ge, Rational((cj - ci) * v), prov);
      if (i + 1 < n) c.coeffs[pi.advertiser_at(i + 1)] -= ci;
      std::size_t price_slot = up ? j : j + 1;
      if (price_slot < n) c.coeffs[pi.advertiser_at(price_slot)] += cj;
      sys.add(std::move(c));
    }
  }
  return sys;
}

}  // namespace gsp
