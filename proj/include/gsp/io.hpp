#pragma once

// JSON and CSV surfaces.
//
//   instance:  {"values":[1,0.53,0.15,0],"ctrs":[1,0.55,0.47,0.47]}
//   bids:      {"bids":[0,0.53,0.15,0]}
//
// Numbers are read as the decimal they were written as (0.53 is 53/100).
// Strings holding "p/q" are also accepted so exact witnesses round-trip.

#include <string>
#include <vector>

#include <json.hpp>

#include "gsp/auction.hpp"
#include "gsp/equilibrium.hpp"
#include "gsp/feasibility.hpp"
#include "gsp/linear_system.hpp"
#include "gsp/search.hpp"

namespace gsp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Throws InputError on malformed JSON or schema violations.
Json parse_json(const std::string& text);

AuctionInstance<Rational> instance_from_json(const Json& j,
                                             Normalization norm = Normalization::unit);
BidProfile<Rational> bids_from_json(const Json& j);

Json to_json(const AuctionInstance<Rational>& instance);
Json bids_to_json(const BidProfile<Rational>& bids);
Json to_json(const NashReport<Rational>& report);
Json to_json(const NashReport<double>& report);
Json to_json(const LinearSystem& system);
LinearSystem linear_system_from_json(const Json& j);
Json to_json(const FeasibilityResult& result);
Json to_json(const SearchResult& result, bool include_frontier = false);

inline constexpr const char* kFrontierCsvHeader =
    "candidate_id,n,permutation,ratio,certified";

// Header row with per-coordinate columns v1..vn,a1..an,b1..bn.
std::string frontier_csv_header(std::size_t n);
std::string frontier_csv_row(const CandidateRecord& r);

// FNV-1a 64-bit, hex.
std::string digest(const std::string& content);

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::vector<std::pair<std::string, std::string>> input_digests;  // (path, digest)
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

Json to_json(const RunManifest& m);

}  // namespace gsp
