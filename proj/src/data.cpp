#include "rv14/data.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rv14/error.hpp"

namespace rv14 {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::string_view bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xfu];
    h >>= 4;
  }
  return out;
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
  return out;
}

GroupSpec parse_spec(const json& j) {
  GroupSpec s;
  s.name = j.at("name").get<std::string>();
  s.degree = j.at("degree").get<std::size_t>();
  s.gap_index = j.value("gap_index", 0);
  s.generators = string_list(j, "generators");
  s.printed_generators = string_list(j, "printed_generators");
  s.errata = string_list(j, "errata");
  if (j.contains("order_printed")) s.order_printed = j.at("order_printed").get<std::size_t>();
  if (j.contains("order_in_proof")) s.order_in_proof = j.at("order_in_proof").get<std::size_t>();
  s.type_printed = j.value("type_printed", "");
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    WitnessSpec ws;
    ws.kind = w.at("class").get<std::string>();
    ws.p = w.at("p").get<unsigned>();
    if (w.contains("q")) ws.q = w.at("q").get<unsigned>();
    ws.p_generators = string_list(w, "P");
    ws.h_generators = string_list(w, "H");
    if (ws.kind != "psi_p" && ws.kind != "psi_pq")
      throw ParseError("group " + s.name + ": unknown witness class '" + ws.kind + "'");
    if ((ws.kind == "psi_pq") != ws.q.has_value())
      throw ParseError("group " + s.name + ": witness q must be given exactly for psi_pq");
    s.witness = std::move(ws);
  }
  if (j.contains("blocks_printed")) {
    for (const auto& b : j.at("blocks_printed")) {
      PrintedBlock pb;
      pb.label = b.at("label").get<std::string>();
      pb.points = b.at("points").get<std::vector<int>>();
      pb.orbit = b.at("orbit").get<std::string>();
      s.blocks_printed.push_back(std::move(pb));
    }
  }
  return s;
}

}  // namespace

std::vector<GroupSpec> parse_group_file(std::string_view text) {
  std::vector<GroupSpec> out;
  try {
    const json j = json::parse(text);
    if (j.contains("groups") || j.contains("subgroups")) {
      for (const auto& g : j.at(j.contains("groups") ? "groups" : "subgroups")) out.push_back(parse_spec(g));
    } else {
      out.push_back(parse_spec(j));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PermGroup build_group(const GroupSpec& spec, std::size_t cap) {
  std::vector<Permutation> gens;
  for (const auto& g : spec.generators) gens.push_back(parse_cycles(g, spec.degree));
  return PermGroup::generate(std::move(gens), spec.degree, cap);
}

std::optional<OliverWitness> build_witness(const GroupSpec& spec) {
  if (!spec.witness) return std::nullopt;
  const auto& ws = *spec.witness;
  OliverWitness w;
  w.p = ws.p;
  w.q = ws.q;
  for (const auto& g : ws.p_generators) w.p_generators.push_back(parse_cycles(g, spec.degree));
  if (ws.kind == "psi_pq") {
    std::vector<Permutation> h;
    for (const auto& g : ws.h_generators) h.push_back(parse_cycles(g, spec.degree));
    w.h_generators = std::move(h);
  }
  return w;
}

const GroupSpec& find_spec(const std::vector<GroupSpec>& specs, std::string_view name) {
  for (const auto& s : specs)
    if (s.name == name) return s;
  throw DataError("group '" + std::string(name) + "' not found");
}

}  // namespace rv14
