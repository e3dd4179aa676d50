#include "gsp/bounds.hpp"

#include <cstdio>

namespace gsp {

BoundsRecord bounds_record(const std::vector<double>& ctrs) {
  BoundsRecord r;
  r.k = ctrs.size();
  r.lambda = lambda(ctrs);
  r.f_closed = ratio_formula(ctrs);
  auto b = poa_bounds(r.k, r.lambda);
  r.bound_a = b.bound_a;
  r.bound_b = b.bound_b;
  r.min_bound = b.min_bound;
  return r;
}

std::string to_csv_row(const BoundsRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g,%.12g", r.k, r.lambda, r.f_closed,
                r.bound_a, r.bound_b, r.min_bound);
  return buf;
}

}  // namespace gsp
