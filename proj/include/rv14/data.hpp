#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rv14/perm.hpp"

namespace rv14 {

struct WitnessSpec {
  std::string kind;  // "psi_p" or "psi_pq"
  unsigned p = 0;
  std::optional<unsigned> q;
  std::vector<std::string> p_generators;
  std::vector<std::string> h_generators;
};

struct PrintedBlock {
  std::string label;
  std::vector<int> points;
  std::string orbit;
};

/// One entry of a group file: {name, degree, generators, ...}.
struct GroupSpec {
  std::string name;
  int gap_index = 0;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  std::vector<std::string> printed_generators;  // only when they differ
  std::vector<std::string> errata;
  std::optional<std::size_t> order_printed;
  std::optional<std::size_t> order_in_proof;
  std::optional<WitnessSpec> witness;
  std::string type_printed;
  std::vector<PrintedBlock> blocks_printed;
};

std::string_view bundled_groups_text();
std::string_view bundled_subgroups_text();
std::string_view bundled_appendix_text();

std::uint64_t fnv1a64(std::string_view bytes);
/// 16 lowercase hex digits of fnv1a64.
std::string digest_hex(std::string_view bytes);

/// Accepts {"groups": [...]}, {"subgroups": [...]} or a single group object.
/// Throws ParseError on malformed input.
std::vector<GroupSpec> parse_group_file(std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// Throws ParseError for bad cycle notation, CapExceeded past `cap`.
PermGroup build_group(const GroupSpec& spec, std::size_t cap = PermGroup::kDefaultCap);
std::optional<OliverWitness> build_witness(const GroupSpec& spec);

/// Looks a group up by name; throws DataError when absent.
const GroupSpec& find_spec(const std::vector<GroupSpec>& specs, std::string_view name);

}  // namespace rv14
