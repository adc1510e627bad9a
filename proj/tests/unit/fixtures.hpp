#pragma once

#include <memory>

#include "rv14/data.hpp"
#include "rv14/search.hpp"

namespace fx {

inline const std::vector<rv14::GroupSpec>& groups() {
  static const auto specs = rv14::parse_group_file(rv14::bundled_groups_text());
  return specs;
}

inline const std::vector<rv14::GroupSpec>& subgroups() {
  static const auto specs = rv14::parse_group_file(rv14::bundled_subgroups_text());
  return specs;
}

inline rv14::PermGroup group(std::string_view name) { return rv14::build_group(rv14::find_spec(groups(), name)); }

inline rv14::PermGroup subgroup(std::string_view name) {
  return rv14::build_group(rv14::find_spec(subgroups(), name));
}

// Shared across test cases; building it classifies eleven subgroups.
inline const rv14::SearchContext& g6() {
  static const auto ctx = rv14::make_g6_context();
  return *ctx;
}

inline std::size_t orbit(const char* id) { return g6().table.flat(rv14::OrbitId::parse(id)); }

}  // namespace fx
