#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rv14/oracle.hpp"
#include "rv14/replay.hpp"
#include "rv14/search.hpp"

namespace rv14 {

inline constexpr const char* kToolVersion = "rv14 1.0.0";

enum class Format { Json, Text };
/// "json" or "text"; throws ParseError otherwise.
Format parse_format(std::string_view s);

struct GroupVerdict {
  std::string name;
  std::size_t degree = 0;
  std::size_t order_computed = 0;
  std::optional<std::size_t> order_printed;
  std::optional<std::size_t> order_in_proof;
  bool transitive = false;
  Classification classification;
  /// cyclic, psi_p, psi_pq, sylow_lemma, search or unresolved
  std::string method;
  bool verified = false;
  std::vector<std::string> discrepancies;
  nlohmann::ordered_json evidence;
};

struct VerdictReport {
  std::string tool_version = kToolVersion;
  std::map<std::string, std::string> digests;
  std::vector<GroupVerdict> groups;
  std::vector<SearchReport> searches;  // one per schedule run on the search group
  bool verdict = false;
};

struct CampaignOptions {
  std::string schedule = "fewest-blocks";
  /// Also run a second schedule and require the same outcome.
  bool seed_independent = false;
  unsigned jobs = 1;
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool use_sylow = true;
  bool use_witness_search = true;
  /// Replaces the bundled groups file.
  std::optional<std::string> groups_text;
};

/// Parses and builds every group before verifying any, so malformed data
/// aborts early with ParseError or DataError.
VerdictReport verify14(const CampaignOptions& opts = {});

nlohmann::ordered_json to_json(const OliverWitness& w);
nlohmann::ordered_json to_json(const Classification& c);
nlohmann::ordered_json to_json(const SearchReport& r, const OrbitTable& t);
nlohmann::ordered_json to_json(const SearchReport& r);
nlohmann::ordered_json to_json(const GroupVerdict& g);
nlohmann::ordered_json to_json(const VerdictReport& r);
nlohmann::ordered_json to_json(const ReplayReport& r);
nlohmann::ordered_json to_json(const ConjectureReport& r);
nlohmann::ordered_json to_json(const RestrictionLemmaReport& r);

std::string emit(const VerdictReport& r, Format f);
std::string emit(const ReplayReport& r, Format f);

/// Orbit states as [{"orbit": "k.j", "state": "T"|"F"}], TRUE first.
nlohmann::ordered_json assignment_to_json(const TypeAssignment& a);
/// Reads that format, either as a bare list or as {"states": [...],
/// "default": "T"|"F"}; unlisted orbits take the default, FREE if none.
/// Throws ParseError.
TypeAssignment assignment_from_json(const nlohmann::json& j, const OrbitTable& t, const OrbitPoset& p);

}  // namespace rv14
