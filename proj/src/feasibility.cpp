#include "gsp/feasibility.hpp"

#include <algorithm>
#include <stdexcept>

#include "gsp/errors.hpp"

namespace gsp {

std::string to_string(FeasibilityStatus s) {
  return s == FeasibilityStatus::feasible ? "feasible" : "infeasible";
}

namespace {

// coeffs . x <= bound, or < bound when strict.
struct Row {
  std::vector<Rational> coeffs;
  Rational bound;
  bool strict = false;
};

enum class Normalized { kept, trivially_true, contradiction };

// Scales so the first non-zero coefficient has magnitude 1.
Normalized normalize(Row& row) {
  auto lead = std::find_if(row.coeffs.begin(), row.coeffs.end(),
                           [](const Rational& c) { return sgn(c) != 0; });
  if (lead == row.coeffs.end()) {
    int s = sgn(row.bound);
    bool ok = row.strict ? s > 0 : s >= 0;
    return ok ? Normalized::trivially_true : Normalized::contradiction;
  }
  if (*lead != 1 && *lead != -1) {
    Rational scale = abs(*lead);
    for (auto it = lead; it != row.coeffs.end(); ++it) {
      if (sgn(*it) != 0) *it /= scale;
    }
    row.bound /= scale;
  }
  return Normalized::kept;
}

bool coeffs_less(const Row& a, const Row& b) {
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    int c = cmp(a.coeffs[j], b.coeffs[j]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool same_coeffs(const Row& a, const Row& b) {
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    if (a.coeffs[j] != b.coeffs[j]) return false;
  }
  return true;
}

// Of rows sharing a coefficient vector only the tightest survives.
void deduplicate(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (coeffs_less(a, b)) return true;
    if (coeffs_less(b, a)) return false;
    int c = cmp(a.bound, b.bound);
    if (c != 0) return c < 0;
    return a.strict && !b.strict;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (out > 0 && same_coeffs(rows[out - 1], rows[i])) continue;
    if (out != i) rows[out] = std::move(rows[i]);
    ++out;
  }
  rows.resize(out);
}

std::string render(const Row& row) {
  std::string s = "0 ";
  s += row.strict ? "< " : "<= ";
  s += format_rational(row.bound);
  return s;
}

std::size_t fm_cost(const std::vector<Row>& rows, std::size_t var) {
  std::size_t pos = 0, neg = 0;
  for (const auto& r : rows) {
    int s = sgn(r.coeffs[var]);
    pos += s > 0;
    neg += s < 0;
  }
  return pos * neg;
}

}  // namespace

FeasibilityResult solve(const LinearSystem& system, const SolveOptions& options) {
  const std::size_t n = system.dimension();
  if (n > options.max_variables) {
    throw InputError("system has " + std::to_string(n) + " variables; cap is " +
                     std::to_string(options.max_variables));
  }
  if (!options.order.empty()) {
    std::vector<std::size_t> check = options.order;
    std::sort(check.begin(), check.end());
    for (std::size_t j = 0; j < check.size(); ++j) {
      if (check.size() != n || check[j] != j) {
        throw InputError("elimination order is not a permutation of the variables");
      }
    }
  }

  FeasibilityResult result;
  std::vector<Row> rows;
  rows.reserve(system.constraints().size());
  for (const auto& c : system.constraints()) {
    if (c.coeffs.size() != n) throw InputError("malformed constraint row");
    Row r;
    bool flip = c.relation == Relation::ge || c.relation == Relation::gt;
    r.strict = c.relation == Relation::lt || c.relation == Relation::gt;
    r.coeffs = c.coeffs;
    r.bound = c.constant;
    if (flip) {
      for (auto& a : r.coeffs) a = -a;
      r.bound = -r.bound;
    }
    switch (normalize(r)) {
      case Normalized::trivially_true:
        continue;
      case Normalized::contradiction:
        result.conflict = render(r) + " (input row " + describe(c.provenance) + ")";
        result.rows_per_stage.push_back(0);
        return result;
      case Normalized::kept:
        rows.push_back(std::move(r));
    }
  }
  deduplicate(rows);

  std::vector<std::vector<Row>> stages;
  std::vector<bool> eliminated(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t var = 0;
    if (!options.order.empty()) {
      var = options.order[step];
    } else {
      std::size_t best_cost = 0;
      bool have = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (eliminated[j]) continue;
        std::size_t c = fm_cost(rows, j);
        if (!have || c < best_cost) {
          best_cost = c;
          var = j;
          have = true;
        }
      }
    }
    eliminated[var] = true;
    result.eliminated_order.push_back(var);
    result.rows_per_stage.push_back(rows.size());

    std::vector<const Row*> pos, neg;
    std::vector<Row> next;
    for (const auto& r : rows) {
      int s = sgn(r.coeffs[var]);
      if (s > 0) {
        pos.push_back(&r);
      } else if (s < 0) {
        neg.push_back(&r);
      } else {
        next.push_back(r);
      }
    }
    for (const Row* p : pos) {
      for (const Row* q : neg) {
        // Multiply p by |q_var| and q by p_var so the variable cancels.
        const Rational& pv = p->coeffs[var];
        Rational qv = -q->coeffs[var];
        Row combined;
        combined.coeffs.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == var) continue;
          const bool pz = sgn(p->coeffs[j]) == 0;
          const bool qz = sgn(q->coeffs[j]) == 0;
          if (pz && qz) continue;
          if (qz) {
            combined.coeffs[j] = qv * p->coeffs[j];
          } else if (pz) {
            combined.coeffs[j] = pv * q->coeffs[j];
          } else {
            combined.coeffs[j] = qv * p->coeffs[j] + pv * q->coeffs[j];
          }
        }
        combined.bound = qv * p->bound + pv * q->bound;
        combined.strict = p->strict || q->strict;
        switch (normalize(combined)) {
          case Normalized::trivially_true:
            break;
          case Normalized::contradiction:
            result.conflict = render(combined) + " after eliminating " +
                              system.variables()[var];
            result.rows_per_stage.push_back(0);
            return result;
          case Normalized::kept:
            next.push_back(std::move(combined));
        }
      }
    }
    deduplicate(next);
    stages.push_back(std::move(rows));
    rows = std::move(next);
  }
  result.rows_per_stage.push_back(rows.size());

  // Every variable is eliminated, so anything left would be constant-only and
  // has already been checked by normalize().
  result.status = FeasibilityStatus::feasible;
  result.witness.assign(n, Rational(0));
  for (std::size_t step = n; step-- > 0;) {
    const std::size_t var = result.eliminated_order[step];
    std::optional<Rational> lower, upper;
    bool lower_strict = false, upper_strict = false;
    for (const auto& r : stages[step]) {
      int s = sgn(r.coeffs[var]);
      if (s == 0) continue;
      Rational rest = r.bound;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == var || sgn(r.coeffs[j]) == 0) continue;
        rest -= r.coeffs[j] * result.witness[j];
      }
      rest /= r.coeffs[var];
      if (s > 0) {
        int c = upper ? cmp(rest, *upper) : -1;
        if (c < 0 || (c == 0 && r.strict)) {
          upper = rest;
          upper_strict = r.strict;
        }
      } else {
        int c = lower ? cmp(rest, *lower) : 1;
        if (c > 0 || (c == 0 && r.strict)) {
          lower = rest;
          lower_strict = r.strict;
        }
      }
    }
    Rational x(0);
    if (lower && upper) {
      x = (*lower == *upper) ? *lower : Rational((*lower + *upper) / 2);
    } else if (lower) {
      x = lower_strict ? Rational(*lower + 1) : *lower;
    } else if (upper) {
      x = upper_strict ? Rational(*upper - 1) : *upper;
    }
    result.witness[var] = std::move(x);
  }
  if (!system.satisfied_by(result.witness)) {
    throw std::logic_error("Fourier-Motzkin witness fails the input system");
  }
  return result;
}

}  // namespace gsp
