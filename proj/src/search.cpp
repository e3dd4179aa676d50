#include "gsp/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "gsp/feasibility.hpp"

namespace gsp {

Assignment cyclic_permutation(std::size_t n) {
  if (n == 0) throw InputError("cyclic permutation needs n >= 1");
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = (k + 1) % n;
  return Assignment(std::move(order));
}

std::vector<Assignment> enumerate_ne_permutations(const AuctionInstance<Rational>& instance,
                                                  TieBreak tie) {
  if (instance.size() > 8) throw InputError("permutation enumeration is capped at n = 8");
  std::vector<Assignment> out;
  for (auto& pi : all_assignments(instance.size())) {
    if (solve(support_system(instance, pi, tie)).feasible()) out.push_back(std::move(pi));
  }
  return out;
}

std::string to_string(Stencil s) {
  switch (s) {
    case Stencil::central: return "central";
    case Stencil::forward: return "forward";
    case Stencil::backward: return "backward";
  }
  return "?";
}

ProbeResult monotonicity_probe(const AuctionInstance<double>& instance, const Assignment& pi,
                               std::size_t coordinate, double h) {
  if (coordinate >= instance.size()) throw InputError("probe coordinate out of range");
  if (!(h > 0)) throw InputError("probe step must be positive");
  const auto& v = instance.values();
  auto shifted_ok = [&](double delta) {
    double x = v[coordinate] + delta;
    if (x < 0) return false;
    if (coordinate > 0 && x > v[coordinate - 1]) return false;
    if (coordinate + 1 < v.size() && x < v[coordinate + 1]) return false;
    return true;
  };
  auto ratio_at = [&](double delta) {
    auto values = v;
    values[coordinate] += delta;
    AuctionInstance<double> moved(std::move(values), instance.ctrs(), Normalization::none);
    return efficiency_ratio(moved, pi);
  };
  const bool up = shifted_ok(h);
  const bool down = shifted_ok(-h);
  ProbeResult r;
  if (up && down) {
    r.stencil = Stencil::central;
    r.derivative = (ratio_at(h) - ratio_at(-h)) / (2 * h);
  } else if (up) {
    r.stencil = Stencil::forward;
    r.derivative = (ratio_at(h) - ratio_at(0)) / h;
  } else if (down) {
    r.stencil = Stencil::backward;
    r.derivative = (ratio_at(0) - ratio_at(-h)) / h;
  } else {
    throw InputError("perturbation of value " + std::to_string(coordinate + 1) +
                     " breaks the value ordering");
  }
  return r;
}

void SearchConfig::validate() const {
  if (n < 1) throw InputError("search needs n >= 1");
  if (n > 10) throw InputError("search is capped at n = 10");
  if (!target && n > 8) throw InputError("unrestricted search enumerates n! permutations; cap n = 8");
  if (target && target->size() != n) throw InputError("target permutation has the wrong size");
  if (!(grid_step > 0 && grid_step < 1)) throw InputError("grid step must lie in (0,1)");
  if (!(shrink > 0 && shrink < 1)) throw InputError("shrink factor must lie in (0,1)");
  if (!(refine_step > 0 && refine_step < 1)) throw InputError("refine step must lie in (0,1)");
  if (resolution < 1) throw InputError("resolution must be positive");
  for (const auto& s : seeds) {
    if (s.size() != n) throw InputError("seed instance has the wrong size");
  }
}

std::string to_string(CandidatePhase p) {
  switch (p) {
    case CandidatePhase::seed: return "seed";
    case CandidatePhase::grid: return "grid";
    case CandidatePhase::random: return "random";
    case CandidatePhase::refine: return "refine";
  }
  return "?";
}

PairStatus evaluate_pair(const AuctionInstance<Rational>& instance, const Assignment& pi,
                         bool prefilter, TieBreak tie, CandidateRecord& out) {
  out.instance = instance;
  out.permutation = pi;
  out.certified = false;
  out.bids.clear();
  out.ratio = 1;
  // NE implies weak feasibility, so pruning with it loses nothing.
  if (prefilter && !weakly_feasible_exact(instance, pi)) return PairStatus::pruned;
  auto result = solve(support_system(instance, pi, tie));
  if (!result.feasible()) return PairStatus::infeasible;
  if (allocate(instance, result.witness, tie) != pi ||
      !verify_nash(instance, result.witness, Rational(0), tie).is_nash) {
    return PairStatus::rejected_witness;
  }
  out.bids = std::move(result.witness);
  out.certified = true;
  out.ratio = efficiency_ratio(instance, pi);
  return PairStatus::certified;
}

std::vector<Rational> random_descending(std::size_t n, std::mt19937_64& rng,
                                        std::int64_t resolution) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> draws(n);
  for (auto& d : draws) d = unit(rng);
  std::sort(draws.begin(), draws.end(), std::greater<>());
  std::vector<Rational> out;
  out.reserve(n);
  out.emplace_back(1);
  for (std::size_t i = 1; i < n; ++i) {
    out.push_back(draws[0] > 0 ? quantize(draws[i] / draws[0], resolution) : Rational(0));
  }
  return out;
}

namespace {

struct Job {
  AuctionInstance<Rational> instance;
  CandidatePhase phase;
};

struct Batch {
  std::vector<CandidateRecord> records;
  SearchStats stats;
};

// Instances in a job range are evaluated against every candidate permutation.
void run_jobs(const SearchConfig& config, const std::vector<Assignment>& perms,
              const std::vector<Job>& jobs, std::size_t begin, std::size_t end, Batch& out) {
  CandidateRecord rec;
  for (std::size_t j = begin; j < end; ++j) {
    ++out.stats.instances;
    for (const auto& pi : perms) {
      ++out.stats.pairs;
      PairStatus st = evaluate_pair(jobs[j].instance, pi, config.prefilter, config.tie, rec);
      rec.phase = jobs[j].phase;
      switch (st) {
        case PairStatus::pruned: ++out.stats.pruned; break;
        case PairStatus::infeasible: ++out.stats.infeasible; break;
        case PairStatus::certified: ++out.stats.certified; break;
        case PairStatus::rejected_witness:
          throw std::logic_error("feasible support system produced an uncertifiable witness");
      }
      if (rec.certified || (config.log_rejected && st != PairStatus::pruned)) {
        out.records.push_back(rec);
      }
    }
  }
}

void merge_stats(SearchStats& into, const SearchStats& s) {
  into.instances += s.instances;
  into.pairs += s.pairs;
  into.pruned += s.pruned;
  into.infeasible += s.infeasible;
  into.certified += s.certified;
  into.refine_evaluations += s.refine_evaluations;
}

std::vector<Batch> evaluate_jobs(const SearchConfig& config, const std::vector<Assignment>& perms,
                                 const std::vector<Job>& jobs) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, jobs.size()));
  std::vector<Batch> batches(workers);
  if (workers == 1) {
    run_jobs(config, perms, jobs, 0, jobs.size(), batches[0]);
    return batches;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (jobs.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = std::min(jobs.size(), w * chunk);
    std::size_t end = std::min(jobs.size(), begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        run_jobs(config, perms, jobs, begin, end, batches[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return batches;
}

std::string instance_key(const AuctionInstance<Rational>& inst) {
  std::string key;
  for (const auto& v : inst.values()) key += v.get_str() + ",";
  key += ";";
  for (const auto& c : inst.ctrs()) key += c.get_str() + ",";
  return key;
}

// Larger ratio wins; ties go to the lexicographically smaller instance, then permutation.
bool better(const CandidateRecord& a, const CandidateRecord& b) {
  int c = cmp(a.ratio, b.ratio);
  if (c != 0) return c > 0;
  std::string ka = instance_key(a.instance), kb = instance_key(b.instance);
  if (ka != kb) return ka < kb;
  return a.permutation < b.permutation;
}

// Non-increasing sequences of length len over {1..m}, as indices.
void grid_sequences(std::size_t len, std::size_t m,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> seq(len, m);
  if (len == 0) {
    visit(seq);
    return;
  }
  while (true) {
    visit(seq);
    // Decrement the last position that can go down, reset the tail to it.
    std::size_t pos = len;
    while (pos > 0 && seq[pos - 1] == 1) --pos;
    if (pos == 0) return;
    --seq[pos - 1];
    for (std::size_t q = pos; q < len; ++q) seq[q] = seq[pos - 1];
  }
}

std::vector<Job> grid_jobs(const SearchConfig& config) {
  std::vector<Job> jobs;
  if (config.grid_budget == 0) return jobs;
  const std::size_t m = static_cast<std::size_t>(std::llround(1.0 / config.grid_step));
  if (m == 0) return jobs;
  std::vector<std::vector<std::size_t>> seqs;
  grid_sequences(config.n - 1, m, [&](const std::vector<std::size_t>& s) { seqs.push_back(s); });
  const std::size_t total = seqs.size() * seqs.size();
  const std::size_t stride = std::max<std::size_t>(1, (total + config.grid_budget - 1) / config.grid_budget);
  auto lattice = [&](std::size_t k) {
    return quantize(static_cast<double>(k) * config.grid_step, config.resolution);
  };
  for (std::size_t idx = 0; idx < total && jobs.size() < config.grid_budget; idx += stride) {
    const auto& vs = seqs[idx / seqs.size()];
    const auto& cs = seqs[idx % seqs.size()];
    std::vector<Rational> values{Rational(1)}, ctrs{Rational(1)};
    for (auto k : vs) values.push_back(std::min(Rational(1), lattice(k)));
    for (auto k : cs) ctrs.push_back(std::min(Rational(1), lattice(k)));
    jobs.push_back({AuctionInstance<Rational>(std::move(values), std::move(ctrs)),
                    CandidatePhase::grid});
  }
  return jobs;
}

// Coordinate pattern search over values[1..] and ctrs[1..] with a fixed permutation.
CandidateRecord refine(const SearchConfig& config, CandidateRecord best, SearchStats& stats,
                       std::vector<CandidateRecord>& log) {
  const std::size_t n = config.n;
  double step = config.refine_step;
  CandidateRecord trial;
  for (std::size_t it = 0; it < config.refine_iterations; ++it) {
    const Rational delta = quantize(step, config.resolution);
    if (delta == 0) break;
    bool improved = false;
    for (std::size_t coord = 0; coord < 2 * (n - 1) && !improved; ++coord) {
      const bool is_value = coord < n - 1;
      const std::size_t idx = 1 + (is_value ? coord : coord - (n - 1));
      for (int dir : {+1, -1}) {
        std::vector<Rational> values = best.instance.values();
        std::vector<Rational> ctrs = best.instance.ctrs();
        auto& xs = is_value ? values : ctrs;
        Rational moved = xs[idx] + (dir > 0 ? delta : Rational(-delta));
        if (moved < 0 || moved > xs[idx - 1] || (idx + 1 < n && moved < xs[idx + 1])) continue;
        xs[idx] = std::move(moved);
        AuctionInstance<Rational> candidate(std::move(values), std::move(ctrs));
        ++stats.refine_evaluations;
        PairStatus st = evaluate_pair(candidate, best.permutation, config.prefilter, config.tie, trial);
        if (st == PairStatus::rejected_witness) {
          throw std::logic_error("feasible support system produced an uncertifiable witness");
        }
        if (st != PairStatus::certified) continue;
        ++stats.certified;
        trial.phase = CandidatePhase::refine;
        if (config.keep_frontier) log.push_back(trial);
        if (trial.ratio > best.ratio) {
          best = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= config.shrink;
  }
  return best;
}

}  // namespace

SearchResult poa_lower_bound(const SearchConfig& config) {
  config.validate();
  std::vector<Assignment> perms =
      config.target ? std::vector<Assignment>{*config.target} : all_assignments(config.n);

  std::vector<Job> jobs;
  for (const auto& s : config.seeds) jobs.push_back({s, CandidatePhase::seed});
  auto grid = grid_jobs(config);
  jobs.insert(jobs.end(), std::make_move_iterator(grid.begin()), std::make_move_iterator(grid.end()));

  std::mt19937_64 rng(config.seed);
  auto random_job = [&] {
    auto values = random_descending(config.n, rng, config.resolution);
    auto ctrs = random_descending(config.n, rng, config.resolution);
    return Job{AuctionInstance<Rational>(std::move(values), std::move(ctrs)), CandidatePhase::random};
  };
  for (std::size_t s = 0; s < config.samples; ++s) jobs.push_back(random_job());

  SearchResult result;
  std::vector<CandidateRecord> records;
  auto absorb = [&](std::vector<Batch>& batches) {
    for (auto& b : batches) {
      merge_stats(result.stats, b.stats);
      for (auto& r : b.records) records.push_back(std::move(r));
    }
  };
  auto batches = evaluate_jobs(config, perms, jobs);
  absorb(batches);

  // Top up with further random batches until enough pairs are certified.
  std::size_t drawn = config.samples;
  while (result.stats.certified < config.target_certified && drawn < config.max_samples) {
    std::size_t batch = std::min<std::size_t>(4096, config.max_samples - drawn);
    std::vector<Job> more;
    more.reserve(batch);
    for (std::size_t s = 0; s < batch; ++s) more.push_back(random_job());
    drawn += batch;
    auto extra = evaluate_jobs(config, perms, more);
    absorb(extra);
  }

  // Refine the best distinct certified candidates (seeds always included).
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].certified) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return better(records[a], records[b]);
  });
  std::vector<std::size_t> to_refine;
  for (std::size_t i : order) {
    if (records[i].ratio <= 1) break;
    if (to_refine.size() >= config.refine_top) break;
    to_refine.push_back(i);
  }
  for (std::size_t i : order) {
    if (records[i].phase == CandidatePhase::seed &&
        std::find(to_refine.begin(), to_refine.end(), i) == to_refine.end() && records[i].ratio > 1) {
      to_refine.push_back(i);
    }
  }

  std::optional<CandidateRecord> best;
  if (!order.empty()) best = records[order.front()];
  std::vector<CandidateRecord> refine_log;
  for (std::size_t i : to_refine) {
    CandidateRecord r = refine(config, records[i], result.stats, refine_log);
    if (!best || better(r, *best)) best = std::move(r);
  }

  if (best) {
    result.best_ratio = best->ratio;
    result.best_instance = best->instance;
    result.witness = best->bids;
    result.permutation = best->permutation;
  } else {
    // Nothing certified: the all-ones instance with zero bids is a Nash
    // equilibrium of the identity assignment with ratio 1.
    result.best_ratio = 1;
    result.best_instance = AuctionInstance<Rational>(std::vector<Rational>(config.n, Rational(1)),
                                                     std::vector<Rational>(config.n, Rational(1)));
    result.witness.assign(config.n, Rational(0));
    result.permutation = Assignment::identity(config.n);
  }

  if (config.keep_frontier) {
    result.frontier = std::move(records);
    for (auto& r : refine_log) result.frontier.push_back(std::move(r));
    for (std::size_t i = 0; i < result.frontier.size(); ++i) result.frontier[i].id = i;
  }
  return result;
}

}  // namespace gsp
