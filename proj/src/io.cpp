#include "gsp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gsp {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

Rational number_from_json(const Json& x, const std::string& field) {
  if (x.is_number_integer()) return Rational(x.get<long>());
  if (x.is_number_float()) return rational_from_double(x.get<double>());
  if (x.is_string()) return parse_rational(x.get<std::string>());
  throw InputError("field '" + field + "' must hold numbers");
}

std::vector<Rational> numbers_from_json(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains(field)) throw InputError("missing field '" + field + "'");
  const Json& arr = j.at(field);
  if (!arr.is_array()) throw InputError("field '" + field + "' must be an array");
  std::vector<Rational> out;
  for (const auto& x : arr) out.push_back(number_from_json(x, field));
  return out;
}

Json numbers(const std::vector<Rational>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(to_double(x));
  return arr;
}

Json exact_strings(const std::vector<Rational>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(format_rational(x));
  return arr;
}

double as_double(double x) { return x; }
double as_double(const Rational& x) { return to_double(x); }

template <Scalar T>
Json nash_to_json(const NashReport<T>& report) {
  Json j;
  j["is_nash"] = report.is_nash;
  j["eps"] = as_double(report.eps);
  j["max_regret"] = as_double(report.max_regret);
  j["permutation"] = report.assignment.one_based();
  Json recs = Json::array();
  for (const auto& r : report.records) {
    Json x;
    x["advertiser"] = r.advertiser + 1;
    x["slot"] = r.slot + 1;
    x["current_utility"] = as_double(r.current_utility);
    x["best_slot"] = r.best_slot + 1;
    x["best_utility"] = as_double(r.best_utility);
    x["regret"] = as_double(r.regret);
    x["supremum"] = r.supremum;
    if constexpr (std::is_same_v<T, Rational>) {
      x["current_utility_exact"] = format_rational(r.current_utility);
      x["best_utility_exact"] = format_rational(r.best_utility);
    }
    recs.push_back(std::move(x));
  }
  j["records"] = std::move(recs);
  return j;
}

}  // namespace

AuctionInstance<Rational> instance_from_json(const Json& j, Normalization norm) {
  return AuctionInstance<Rational>(numbers_from_json(j, "values"), numbers_from_json(j, "ctrs"),
                                   norm);
}

BidProfile<Rational> bids_from_json(const Json& j) { return numbers_from_json(j, "bids"); }

Json to_json(const AuctionInstance<Rational>& instance) {
  Json j;
  j["values"] = numbers(instance.values());
  j["ctrs"] = numbers(instance.ctrs());
  return j;
}

Json bids_to_json(const BidProfile<Rational>& bids) {
  Json j;
  j["bids"] = numbers(bids);
  j["bids_exact"] = exact_strings(bids);
  return j;
}

Json to_json(const NashReport<Rational>& report) { return nash_to_json(report); }
Json to_json(const NashReport<double>& report) { return nash_to_json(report); }

Json to_json(const LinearSystem& system) {
  Json j;
  j["variables"] = system.variables();
  Json rows = Json::array();
  for (const auto& c : system.constraints()) {
    Json r;
    r["coeffs"] = exact_strings(c.coeffs);
    r["relation"] = to_string(c.relation);
    r["constant"] = format_rational(c.constant);
    r["provenance"] = {{"kind", to_string(c.provenance.kind)},
                       {"advertiser", c.provenance.advertiser + 1},
                       {"slot", c.provenance.slot + 1},
                       {"target", c.provenance.target + 1}};
    rows.push_back(std::move(r));
  }
  j["constraints"] = std::move(rows);
  return j;
}

LinearSystem linear_system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("variables") || !j.contains("constraints")) {
    throw InputError("linear system needs 'variables' and 'constraints'");
  }
  std::vector<std::string> names;
  for (const auto& v : j.at("variables")) {
    if (!v.is_string()) throw InputError("variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  LinearSystem sys(std::move(names));
  for (const auto& r : j.at("constraints")) {
    LinearConstraint c;
    c.coeffs = numbers_from_json(r, "coeffs");
    if (!r.contains("relation") || !r.at("relation").is_string()) {
      throw InputError("constraint needs a relation");
    }
    c.relation = parse_relation(r.at("relation").get<std::string>());
    if (!r.contains("constant")) throw InputError("constraint needs a constant");
    c.constant = number_from_json(r.at("constant"), "constant");
    if (r.contains("provenance")) {
      const Json& p = r.at("provenance");
      auto index = [&](const char* key) -> std::size_t {
        if (!p.contains(key)) return 0;
        long v = p.at(key).get<long>();
        if (v < 1) throw InputError("provenance indices are one-based");
        return static_cast<std::size_t>(v - 1);
      };
      c.provenance.kind = parse_constraint_kind(p.value("kind", std::string("other")));
      c.provenance.advertiser = index("advertiser");
      c.provenance.slot = index("slot");
      c.provenance.target = index("target");
    }
    sys.add(std::move(c));
  }
  return sys;
}

Json to_json(const FeasibilityResult& result) {
  Json j;
  j["status"] = to_string(result.status);
  if (result.feasible()) {
    j["witness"] = numbers(result.witness);
    j["witness_exact"] = exact_strings(result.witness);
  } else {
    j["conflict"] = result.conflict;
  }
  std::vector<std::size_t> order;
  for (auto v : result.eliminated_order) order.push_back(v + 1);
  j["eliminated_order"] = order;
  j["rows_per_stage"] = result.rows_per_stage;
  return j;
}

Json to_json(const SearchResult& result, bool include_frontier) {
  Json j;
  j["best_ratio"] = to_double(result.best_ratio);
  j["best_ratio_exact"] = format_rational(result.best_ratio);
  j["permutation"] = result.permutation.one_based();
  j["instance"] = to_json(result.best_instance);
  j["witness"] = bids_to_json(result.witness);
  j["stats"] = {{"instances", result.stats.instances},
                {"pairs", result.stats.pairs},
                {"pruned", result.stats.pruned},
                {"infeasible", result.stats.infeasible},
                {"certified", result.stats.certified},
                {"refine_evaluations", result.stats.refine_evaluations}};
  if (include_frontier) {
    Json rows = Json::array();
    for (const auto& r : result.frontier) {
      rows.push_back({{"candidate_id", r.id},
                      {"phase", to_string(r.phase)},
                      {"permutation", r.permutation.one_based()},
                      {"ratio", to_double(r.ratio)},
                      {"certified", r.certified},
                      {"instance", to_json(r.instance)},
                      {"bids_exact", exact_strings(r.bids)}});
    }
    j["frontier"] = std::move(rows);
  }
  return j;
}

std::string frontier_csv_header(std::size_t n) {
  std::string h = kFrontierCsvHeader;
  for (const char* prefix : {"v", "a", "b"}) {
    for (std::size_t i = 1; i <= n; ++i) h += "," + std::string(prefix) + std::to_string(i);
  }
  return h;
}

std::string frontier_csv_row(const CandidateRecord& r) {
  std::ostringstream os;
  char ratio[64];
  std::snprintf(ratio, sizeof ratio, "%.12g", to_double(r.ratio));
  os << r.id << ',' << r.instance.size() << ',';
  auto perm = r.permutation.one_based();
  for (std::size_t k = 0; k < perm.size(); ++k) os << (k ? " " : "") << perm[k];
  os << ',' << ratio << ',' << (r.certified ? 1 : 0);
  for (const auto& v : r.instance.values()) os << ',' << format_rational(v);
  for (const auto& c : r.instance.ctrs()) os << ',' << format_rational(c);
  for (std::size_t i = 0; i < r.instance.size(); ++i) {
    os << ',';
    if (i < r.bids.size()) os << format_rational(r.bids[i]);
  }
  return os.str();
}

std::string digest(const std::string& content) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["tool_version"] = kToolVersion;
  j["seed"] = m.seed;
  j["config"] = m.config;
  Json inputs = Json::array();
  for (const auto& [path, d] : m.input_digests) inputs.push_back({{"path", path}, {"fnv1a64", d}});
  j["inputs"] = std::move(inputs);
  j["outputs"] = m.outputs;
  return j;
}

}  // namespace gsp
