// gsp: command-line front end for the GSP equilibrium toolkit.
//
// Exit codes: 0 success / true, 1 analytic failure (not Nash, infeasible,
// criterion failed), 2 input error, 3 contract violation.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsp/acceptance.hpp"
#include "gsp/bounds.hpp"
#include "gsp/equilibrium.hpp"
#include "gsp/feasibility.hpp"
#include "gsp/io.hpp"
#include "gsp/search.hpp"

namespace {

using namespace gsp;

constexpr int kOk = 0;
constexpr int kAnalyticFailure = 1;
constexpr int kInputError = 2;
constexpr int kContractViolation = 3;

std::size_t workers_from_env() {
  const char* w = std::getenv("GSP_WORKERS");
  if (!w) return 1;
  int v = std::atoi(w);
  return v > 0 ? static_cast<std::size_t>(v) : 1;
}

struct Inputs {
  AuctionInstance<Rational> instance;
  BidProfile<Rational> bids;
  RunManifest manifest;
};

AuctionInstance<Rational> load_instance(const std::string& path, bool normalize,
                                        RunManifest& manifest, Rational* value_scale = nullptr) {
  std::string text = read_file(path);
  manifest.input_digests.emplace_back(path, digest(text));
  auto raw = instance_from_json(parse_json(text), Normalization::none);
  if (!normalize) return AuctionInstance<Rational>(raw.values(), raw.ctrs(), Normalization::unit);
  if (value_scale) *value_scale = raw.value(0);
  return AuctionInstance<Rational>(raw.values(), raw.ctrs(), Normalization::rescale);
}

Inputs load_inputs(const std::string& command, const std::string& instance_path,
                   const std::string& bids_path, bool normalize) {
  Inputs in;
  in.manifest.command = command;
  Rational scale(1);
  in.instance = load_instance(instance_path, normalize, in.manifest, &scale);
  std::string text = read_file(bids_path);
  in.manifest.input_digests.emplace_back(bids_path, digest(text));
  in.bids = bids_from_json(parse_json(text));
  if (normalize && scale != 0) {
    for (auto& b : in.bids) b /= scale;
  }
  in.manifest.config = {{"normalize", normalize}};
  return in;
}

std::string show(const Rational& x) { return format_display(to_double(x)); }

void write_json(const std::string& path, Json body, RunManifest manifest) {
  manifest.outputs.push_back(path);
  Json out;
  out["manifest"] = to_json(manifest);
  for (auto& [k, v] : body.items()) out[k] = v;
  write_file(path, out.dump(2) + "\n");
}

int cmd_eval(const std::string& instance_path, const std::string& bids_path, bool normalize,
             const std::string& json_path) {
  auto in = load_inputs("eval", instance_path, bids_path, normalize);
  auto out = settle(in.instance, in.bids);
  std::cout << "allocation: " << out.assignment.to_string() << "\n";
  std::printf("%-6s%-12s%-12s%s\n", "slot", "advertiser", "payment", "utility");
  for (std::size_t k = 0; k < in.instance.size(); ++k) {
    std::size_t adv = out.assignment.advertiser_at(k);
    std::printf("%-6zu%-12zu%-12s%s\n", k + 1, adv + 1, show(out.payments[k]).c_str(),
                show(out.utilities[adv]).c_str());
  }
  std::fflush(stdout);
  std::cout << "welfare: " << show(out.welfare) << "\n";
  std::cout << "optimal welfare: " << show(in.instance.optimal_welfare()) << "\n";
  std::optional<Rational> ratio;
  try {
    ratio = efficiency_ratio(in.instance, out.assignment);
    std::cout << "efficiency: " << show(*ratio) << "\n";
  } catch (const DegenerateInstance&) {
    std::cout << "efficiency: undefined (zero welfare)\n";
  }
  if (!json_path.empty()) {
    Json body;
    body["permutation"] = out.assignment.one_based();
    Json payments = Json::array(), utilities = Json::array();
    for (const auto& p : out.payments) payments.push_back(format_rational(p));
    for (const auto& u : out.utilities) utilities.push_back(format_rational(u));
    body["payments_exact"] = payments;
    body["utilities_exact"] = utilities;
    body["welfare_exact"] = format_rational(out.welfare);
    if (ratio) body["efficiency"] = to_double(*ratio);
    write_json(json_path, body, in.manifest);
  }
  return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& bids_path, bool normalize,
               bool use_float, double eps, const std::string& json_path) {
  auto in = load_inputs("verify", instance_path, bids_path, normalize);
  bool nash = false;
  Json body;
  auto print_records = [](const auto& report) {
    std::cout << "allocation: " << report.assignment.to_string() << "\n";
    std::printf("%-12s%-6s%-12s%-11s%-14s%s\n", "advertiser", "slot", "utility", "best_slot",
                "best_utility", "regret");
    for (const auto& r : report.records) {
      std::printf("%-12zu%-6zu%-12s%-11zu%-14s%s%s\n", r.advertiser + 1, r.slot + 1,
                  format_display(to_double(r.current_utility)).c_str(), r.best_slot + 1,
                  format_display(to_double(r.best_utility)).c_str(),
                  format_display(to_double(r.regret)).c_str(), r.supremum ? " (supremum)" : "");
    }
    std::fflush(stdout);
    std::cout << "max regret: " << format_display(to_double(report.max_regret)) << "\n";
    std::cout << (report.is_nash ? "verdict: Nash equilibrium\n" : "verdict: not a Nash equilibrium\n");
  };
  if (use_float) {
    auto inst = to_double(in.instance);
    auto report = verify_nash(inst, to_doubles(in.bids), eps);
    print_records(report);
    nash = report.is_nash;
    body["report"] = to_json(report);
  } else {
    auto report = verify_nash(in.instance, in.bids, Rational(0));
    print_records(report);
    nash = report.is_nash;
    body["report"] = to_json(report);
  }
  if (!json_path.empty()) {
    in.manifest.config["float"] = use_float;
    in.manifest.config["eps"] = use_float ? eps : 0.0;
    write_json(json_path, body, in.manifest);
  }
  return nash ? kOk : kAnalyticFailure;
}

int cmd_feasible(const std::string& instance_path, const std::string& perm,
                 const std::string& system_path, bool normalize, bool show_system,
                 const std::string& json_path) {
  RunManifest manifest;
  manifest.command = "feasible";
  LinearSystem sys;
  if (!system_path.empty()) {
    std::string text = read_file(system_path);
    manifest.input_digests.emplace_back(system_path, digest(text));
    Json j = parse_json(text);
    sys = linear_system_from_json(j.is_object() && j.contains("system") ? j.at("system") : j);
  } else {
    if (instance_path.empty() || perm.empty()) {
      throw InputError("feasible needs --instance and --perm, or --system-file");
    }
    auto inst = load_instance(instance_path, normalize, manifest);
    auto pi = parse_assignment(perm);
    if (pi.size() != inst.size()) throw InputError("permutation size does not match the instance");
    manifest.config = {{"perm", pi.one_based()}, {"normalize", normalize}};
    sys = support_system(inst, pi);
  }
  if (show_system) std::cout << sys.listing();
  auto result = solve(sys);
  std::cout << "status: " << to_string(result.status) << "\n";
  if (result.feasible()) {
    std::cout << "witness:";
    for (const auto& w : result.witness) std::cout << ' ' << format_rational(w);
    std::cout << "\n";
  } else {
    std::cout << "conflict: " << result.conflict << "\n";
  }
  if (!json_path.empty()) {
    Json body;
    body["system"] = to_json(sys);
    body["result"] = to_json(result);
    write_json(json_path, body, manifest);
  }
  return result.feasible() ? kOk : kAnalyticFailure;
}

struct PoaArgs {
  std::size_t n = 3;
  std::string perm;
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  double grid_step = 0.05;
  std::size_t grid_budget = 0;
  std::size_t target_certified = 0;
  std::size_t refine_top = 8;
  std::size_t refine_iterations = 200;
  double refine_step = 0.01;
  double shrink = 0.5;
  bool no_prefilter = false;
  std::vector<std::string> seed_instances;
  std::string json_path;
  std::string csv_path;
};

int cmd_poa(const PoaArgs& a) {
  RunManifest manifest;
  manifest.command = "poa";
  manifest.seed = a.seed;
  SearchConfig cfg;
  cfg.n = a.n;
  if (!a.perm.empty()) cfg.target = parse_assignment(a.perm);
  cfg.seed = a.seed;
  cfg.samples = a.budget;
  cfg.grid_step = a.grid_step;
  cfg.grid_budget = a.grid_budget;
  cfg.target_certified = a.target_certified;
  cfg.refine_top = a.refine_top;
  cfg.refine_iterations = a.refine_iterations;
  cfg.refine_step = a.refine_step;
  cfg.shrink = a.shrink;
  cfg.prefilter = !a.no_prefilter;
  cfg.workers = workers_from_env();
  for (const auto& path : a.seed_instances) cfg.seeds.push_back(load_instance(path, false, manifest));
  manifest.config = {{"n", cfg.n},
                     {"perm", cfg.target ? Json(cfg.target->one_based()) : Json(nullptr)},
                     {"samples", cfg.samples},
                     {"grid_step", cfg.grid_step},
                     {"grid_budget", cfg.grid_budget},
                     {"target_certified", cfg.target_certified},
                     {"refine_top", cfg.refine_top},
                     {"refine_iterations", cfg.refine_iterations},
                     {"refine_step", cfg.refine_step},
                     {"shrink", cfg.shrink},
                     {"prefilter", cfg.prefilter},
                     {"resolution", cfg.resolution}};
  auto r = poa_lower_bound(cfg);
  std::cout << "best ratio: " << show(r.best_ratio) << " (" << format_rational(r.best_ratio) << ")\n";
  std::cout << "permutation: " << r.permutation.to_string() << "\n";
  std::cout << "values:";
  for (const auto& v : r.best_instance.values()) std::cout << ' ' << format_rational(v);
  std::cout << "\nctrs:";
  for (const auto& c : r.best_instance.ctrs()) std::cout << ' ' << format_rational(c);
  std::cout << "\nwitness bids:";
  for (const auto& b : r.witness) std::cout << ' ' << format_rational(b);
  std::cout << "\ninstances: " << r.stats.instances << "  pairs: " << r.stats.pairs
            << "  pruned: " << r.stats.pruned << "  infeasible: " << r.stats.infeasible
            << "  certified: " << r.stats.certified << "\n";
  if (!a.csv_path.empty()) {
    manifest.outputs.push_back(a.csv_path);
    std::ostringstream os;
    os << "# manifest: " << to_json(manifest).dump() << "\n";
    os << frontier_csv_header(cfg.n) << "\n";
    for (const auto& rec : r.frontier) os << frontier_csv_row(rec) << "\n";
    write_file(a.csv_path, os.str());
  }
  if (!a.json_path.empty()) write_json(a.json_path, to_json(r), manifest);
  return kOk;
}

int cmd_bounds(const std::string& k_range, std::size_t samples, std::uint64_t seed,
               const std::string& out_path) {
  std::size_t k_lo = 0, k_hi = 0;
  {
    auto colon = k_range.find(':');
    try {
      k_lo = std::stoul(k_range.substr(0, colon));
      k_hi = colon == std::string::npos ? k_lo : std::stoul(k_range.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("--k-range expects LO:HI");
    }
    if (k_lo < 3 || k_hi < k_lo) throw InputError("--k-range needs 3 <= LO <= HI");
  }
  RunManifest manifest;
  manifest.command = "bounds";
  manifest.seed = seed;
  manifest.config = {{"k_range", k_range}, {"samples", samples}};
  if (!out_path.empty()) manifest.outputs.push_back(out_path);
  std::ostringstream os;
  os << "# manifest: " << to_json(manifest).dump() << "\n" << kBoundsCsvHeader << "\n";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    for (std::size_t s = 0; s < samples;) {
      std::vector<double> a(k);
      for (auto& x : a) x = unit(rng);
      std::sort(a.begin(), a.end(), std::greater<>());
      if (a.front() == 0 || a[k - 2] == 0) continue;
      const double top = a.front();
      for (auto& x : a) x /= top;
      auto rec = bounds_record(a);
      violations += rec.f_closed > rec.min_bound + 1e-12;
      os << to_csv_row(rec) << "\n";
      ++s;
    }
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    write_file(out_path, os.str());
  }
  std::cerr << "rows with f_closed above min_bound: " << violations << "\n";
  return kOk;
}

int cmd_permutations(const std::string& instance_path, bool normalize) {
  RunManifest manifest;
  auto inst = load_instance(instance_path, normalize, manifest);
  for (const auto& pi : enumerate_ne_permutations(inst)) {
    double ratio = 0;
    try {
      ratio = to_double(efficiency_ratio(inst, pi));
    } catch (const DegenerateInstance&) {
    }
    std::cout << pi.to_string() << "  efficiency " << format_display(ratio) << "\n";
  }
  return kOk;
}

int cmd_dynamics(const std::string& instance_path, const std::string& bids_path, bool normalize,
                 std::size_t max_rounds, std::uint64_t seed, bool fixed_order) {
  auto in = load_inputs("dynamics", instance_path, bids_path, normalize);
  DynamicsConfig cfg;
  cfg.max_rounds = max_rounds;
  cfg.seed = seed;
  cfg.shuffle_each_round = !fixed_order;
  auto r = best_response_dynamics(in.instance, in.bids, cfg, Rational(0));
  for (const auto& m : r.moves) {
    std::cout << "round " << m.round + 1 << ": advertiser " << m.advertiser + 1 << " "
              << format_rational(m.old_bid) << " -> " << format_rational(m.new_bid)
              << " (slot " << m.target_slot + 1 << ")\n";
  }
  std::cout << "status: " << to_string(r.status) << " after " << r.rounds_with_change
            << " rounds with moves\n";
  std::cout << "terminal bids:";
  for (const auto& b : r.trajectory.back()) std::cout << ' ' << format_rational(b);
  std::cout << "\nterminal allocation: " << r.terminal.assignment.to_string() << "\n";
  std::cout << (r.terminal.is_nash ? "terminal profile is Nash\n" : "terminal profile is not Nash\n");
  return r.terminal.is_nash ? kOk : kAnalyticFailure;
}

int cmd_probe(const std::string& instance_path, const std::string& perm, std::size_t coord,
              double h) {
  RunManifest manifest;
  auto inst = to_double(load_instance(instance_path, false, manifest));
  if (coord < 1) throw InputError("--coord is one-based");
  auto r = monotonicity_probe(inst, parse_assignment(perm), coord - 1, h);
  std::cout << "d ratio / d v" << coord << " = " << format_display(r.derivative) << " ("
            << to_string(r.stencil) << " difference, h=" << h << ")\n";
  return kOk;
}

int cmd_reproduce(bool list, const std::vector<int>& only, const std::string& fault,
                  std::uint64_t seed) {
  if (list) {
    for (const auto& c : acceptance::list_criteria()) {
      std::cout << c.id << ". " << c.title << " (budget " << c.budget_seconds << "s)\n";
    }
    return kOk;
  }
  acceptance::Options opt;
  opt.seed = seed;
  opt.workers = workers_from_env();
  if (fault == "tie-break") {
    opt.tie = TieBreak::descending_index;
  } else if (!fault.empty()) {
    throw InputError("unknown fault '" + fault + "' (known: tie-break)");
  }
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (const auto& c : acceptance::list_criteria()) ids.push_back(c.id);
  }
  bool all = true;
  for (int id : ids) {
    auto r = acceptance::run_criterion(id, opt);
    std::cout << acceptance::format_row(r) << std::endl;
    all = all && r.passed;
  }
  return all ? kOk : kAnalyticFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GSP auctions: equilibrium verification, feasibility, price-of-anarchy search"};
  app.require_subcommand(1);
  int code = kOk;

  std::string instance, bids, perm, json_path, system_path;
  bool normalize = false;

  auto* eval = app.add_subcommand("eval", "Allocation, payments, utilities, welfare, efficiency");
  eval->add_option("--instance", instance, "Instance JSON")->required();
  eval->add_option("--bids", bids, "Bid JSON")->required();
  eval->add_flag("--normalize", normalize, "Rescale so the top value and CTR are 1");
  eval->add_option("--json", json_path, "Write the outcome as JSON");
  eval->callback([&] { code = cmd_eval(instance, bids, normalize, json_path); });

  bool use_float = false;
  double eps = 1e-9;
  auto* verify = app.add_subcommand("verify", "Pure Nash check (exit 0 iff Nash)");
  verify->add_option("--instance", instance, "Instance JSON")->required();
  verify->add_option("--bids", bids, "Bid JSON")->required();
  verify->add_flag("--normalize", normalize, "Rescale so the top value and CTR are 1");
  verify->add_flag("--float", use_float, "Floating-point mode with tolerance --eps");
  verify->add_option("--eps", eps, "Regret tolerance in float mode");
  verify->add_option("--json", json_path, "Write the Nash report as JSON");
  verify->callback([&] { code = cmd_verify(instance, bids, normalize, use_float, eps, json_path); });

  bool show_system = false;
  auto* feasible = app.add_subcommand("feasible", "Decide whether a permutation is NE-supportable");
  feasible->add_option("--instance", instance, "Instance JSON");
  feasible->add_option("--perm", perm, "Permutation slot->advertiser, e.g. 2,3,1,4");
  feasible->add_option("--system-file", system_path, "Solve a LinearSystem JSON instead");
  feasible->add_flag("--normalize", normalize, "Rescale so the top value and CTR are 1");
  feasible->add_flag("--system", show_system, "Print the constraint listing");
  feasible->add_option("--json", json_path, "Write system and result as JSON");
  feasible->callback([&] {
    code = cmd_feasible(instance, perm, system_path, normalize, show_system, json_path);
  });

  PoaArgs poa;
  auto* poa_cmd = app.add_subcommand("poa", "Certified price-of-anarchy lower-bound search");
  poa_cmd->add_option("--n", poa.n, "Number of advertisers and slots")->required();
  poa_cmd->add_option("--perm", poa.perm, "Restrict to one permutation");
  poa_cmd->add_option("--seed", poa.seed, "RNG seed");
  poa_cmd->add_option("--budget", poa.budget, "Random instances");
  poa_cmd->add_option("--grid-step", poa.grid_step, "Lattice step of the structured grid");
  poa_cmd->add_option("--grid-budget", poa.grid_budget, "Grid instances (0: no grid)");
  poa_cmd->add_option("--target-certified", poa.target_certified,
                      "Keep sampling until this many pairs are certified");
  poa_cmd->add_option("--refine-top", poa.refine_top, "Candidates to refine");
  poa_cmd->add_option("--refine-iters", poa.refine_iterations, "Pattern-search sweeps per candidate");
  poa_cmd->add_option("--refine-step", poa.refine_step, "Initial pattern-search step");
  poa_cmd->add_option("--shrink", poa.shrink, "Step shrink factor");
  poa_cmd->add_flag("--no-prefilter", poa.no_prefilter, "Skip weak-feasibility pruning");
  poa_cmd->add_option("--seed-instance", poa.seed_instances, "Instance JSON to seed the search");
  poa_cmd->add_option("--json", poa.json_path, "Write the SearchResult as JSON");
  poa_cmd->add_option("--csv", poa.csv_path, "Write the frontier log as CSV");
  poa_cmd->callback([&] { code = cmd_poa(poa); });

  std::string k_range = "5:10", out_path;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  auto* bounds = app.add_subcommand("bounds", "Closed-form ratio and lambda bounds sweep (CSV)");
  bounds->add_option("--k-range", k_range, "LO:HI");
  bounds->add_option("--samples", samples, "Random CTR vectors per k");
  bounds->add_option("--seed", seed, "RNG seed");
  bounds->add_option("--out", out_path, "CSV path (default stdout)");
  bounds->callback([&] { code = cmd_bounds(k_range, samples, seed, out_path); });

  auto* perms = app.add_subcommand("permutations", "All NE-supportable permutations of an instance");
  perms->add_option("--instance", instance, "Instance JSON")->required();
  perms->add_flag("--normalize", normalize, "Rescale so the top value and CTR are 1");
  perms->callback([&] { code = cmd_permutations(instance, normalize); });

  std::size_t max_rounds = 100;
  bool fixed_order = false;
  auto* dyn = app.add_subcommand("dynamics", "Best-response dynamics from a bid profile");
  dyn->add_option("--instance", instance, "Instance JSON")->required();
  dyn->add_option("--bids", bids, "Initial bid JSON")->required();
  dyn->add_flag("--normalize", normalize, "Rescale so the top value and CTR are 1");
  dyn->add_option("--max-rounds", max_rounds, "Round cap");
  dyn->add_option("--seed", seed, "Seed for the per-round update order");
  dyn->add_flag("--fixed-order", fixed_order, "Update advertisers 1..n every round");
  dyn->callback([&] { code = cmd_dynamics(instance, bids, normalize, max_rounds, seed, fixed_order); });

  std::size_t coord = 1;
  double h = 1e-4;
  auto* probe = app.add_subcommand("probe", "Finite-difference sign of the ratio in one value");
  probe->add_option("--instance", instance, "Instance JSON")->required();
  probe->add_option("--perm", perm, "Permutation slot->advertiser")->required();
  probe->add_option("--coord", coord, "Value coordinate (one-based)")->required();
  probe->add_option("--step", h, "Finite-difference step");
  probe->callback([&] { code = cmd_probe(instance, perm, coord, h); });

  bool list = false;
  std::vector<int> only;
  std::string fault;
  auto* repro = app.add_subcommand("reproduce", "Run the reproduction criteria");
  repro->add_flag("--list", list, "List criteria without running them");
  repro->add_option("--only", only, "Run only these criteria");
  repro->add_option("--inject-fault", fault, "Deliberately break a component (tie-break)");
  repro->add_option("--seed", seed, "RNG seed");
  repro->callback([&] { code = cmd_reproduce(list, only, fault, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  } catch (const ConservativenessViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContractViolation;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegenerateInstance& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
