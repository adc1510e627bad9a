#include "rv14/orbits.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <sstream>

#include "rv14/error.hpp"
#include "rv14/kernels.hpp"

namespace rv14 {

Mask mask_of(std::initializer_list<int> points) {
  return mask_of(std::span<const int>(points.begin(), points.size()));
}

Mask mask_of(std::span<const int> points) {
  Mask m = 0;
  for (int p : points) {
    if (p < 1 || p > 32) throw ParseError("point " + std::to_string(p) + " out of range");
    m |= Mask{1} << (p - 1);
  }
  return m;
}

std::vector<int> points_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

std::string mask_to_string(Mask m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int p : points_of(m)) {
    os << (first ? "" : ",") << p;
    first = false;
  }
  os << '}';
  return os.str();
}

Mask act(const Permutation& p, Mask m) {
  Mask r = 0;
  while (m) {
    const int i = std::countr_zero(m);
    r |= Mask{1} << p(static_cast<Point>(i));
    m &= m - 1;
  }
  return r;
}

bool lex_less(Mask a, Mask b) {
  const Mask d = a ^ b;
  return (a & d & (~d + 1)) != 0;
}

std::string OrbitId::str() const { return std::to_string(level) + "." + std::to_string(index); }

OrbitId OrbitId::parse(std::string_view text) {
  const auto dot = text.find('.');
  OrbitId id;
  if (dot == std::string_view::npos) throw ParseError("orbit id '" + std::string(text) + "' lacks '.'");
  auto parse_int = [&](std::string_view s, int& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || out < 0)
      throw ParseError("orbit id '" + std::string(text) + "' is malformed");
  };
  parse_int(text.substr(0, dot), id.level);
  parse_int(text.substr(dot + 1), id.index);
  return id;
}

OrbitTable::OrbitTable(const PermGroup& g) {
  degree_ = g.degree();
  if (degree_ == 0 || degree_ > kMaxDegree)
    throw DataError("orbit tables support degrees 1.." + std::to_string(kMaxDegree));
  group_order_ = g.order();
  transitive_ = is_transitive(g);

  const std::size_t n_masks = std::size_t{1} << degree_;
  std::vector<Mask> all(n_masks);
  std::iota(all.begin(), all.end(), Mask{0});

  std::vector<std::vector<Mask>> images;
  for (const auto& gen : g.generators()) {
    std::vector<Mask> img(n_masks);
    kernels::act_batch(kernels::make_lut(gen), all, img);
    images.push_back(std::move(img));
  }

  // Breadth-first orbit discovery over generator images.
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> raw(n_masks, kUnset);
  std::vector<std::vector<Mask>> orbits;
  for (Mask m = 0; m < n_masks; ++m) {
    if (raw[m] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(orbits.size());
    std::vector<Mask> orb{m};
    raw[m] = id;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      for (const auto& img : images) {
        const Mask y = img[orb[head]];
        if (raw[y] == kUnset) {
          raw[y] = id;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }

  std::vector<Mask> rep(orbits.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    Mask best = orbits[i].front();
    for (Mask x : orbits[i])
      if (lex_less(x, best)) best = x;
    rep[i] = best;
  }

  std::vector<std::size_t> order(orbits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int la = std::popcount(rep[a]);
    const int lb = std::popcount(rep[b]);
    if (la != lb) return la < lb;
    return lex_less(rep[a], rep[b]);
  });

  std::vector<std::uint32_t> flat_of_raw(orbits.size());
  level_offset_.assign(degree_ + 2, 0);
  member_offset_.push_back(0);
  for (std::size_t f = 0; f < order.size(); ++f) {
    const auto& orb = orbits[order[f]];
    flat_of_raw[order[f]] = static_cast<std::uint32_t>(f);
    const int lvl = std::popcount(rep[order[f]]);
    orbit_level_.push_back(lvl);
    level_offset_[static_cast<std::size_t>(lvl) + 1]++;
    representative_.push_back(rep[order[f]]);
    member_list_.insert(member_list_.end(), orb.begin(), orb.end());
    member_offset_.push_back(member_list_.size());
    containing_first_.push_back(
        static_cast<std::size_t>(std::count_if(orb.begin(), orb.end(), [](Mask x) { return x & 1u; })));
  }
  std::partial_sum(level_offset_.begin(), level_offset_.end(), level_offset_.begin());

  orbit_of_.resize(n_masks);
  for (Mask m = 0; m < n_masks; ++m) orbit_of_[m] = flat_of_raw[raw[m]];
}

OrbitId OrbitTable::id(std::size_t flat) const {
  const int lvl = orbit_level_[flat];
  return {lvl, static_cast<int>(flat - level_begin(lvl))};
}

std::size_t OrbitTable::flat(OrbitId id) const {
  if (id.level < 0 || static_cast<std::size_t>(id.level) > degree_ || id.index < 0 ||
      static_cast<std::size_t>(id.index) >= level_count(id.level))
    throw DataError("orbit " + id.str() + " does not exist");
  return level_begin(id.level) + static_cast<std::size_t>(id.index);
}

std::span<const Mask> OrbitTable::members(std::size_t flat) const {
  return std::span<const Mask>(member_list_).subspan(member_offset_[flat],
                                                      member_offset_[flat + 1] - member_offset_[flat]);
}

OrbitPoset::OrbitPoset(const OrbitTable& t) {
  const std::size_t n_orbits = t.size();
  std::vector<std::vector<std::size_t>> below(n_orbits);
  for (std::size_t o = 0; o < n_orbits; ++o) {
    // Any member works: sub-masks of g(m) are images of sub-masks of m.
    const Mask m = t.representative(o);
    Mask rest = m;
    while (rest) {
      const Mask bit = rest & (~rest + 1);
      below[o].push_back(t.orbit_of(m & ~bit));
      rest &= rest - 1;
    }
    std::sort(below[o].begin(), below[o].end());
    below[o].erase(std::unique(below[o].begin(), below[o].end()), below[o].end());
    for (auto b : below[o]) edges_.emplace_back(b, o);
  }

  lower_.assign(n_orbits, OrbitSet(n_orbits));
  for (std::size_t o = 0; o < n_orbits; ++o) {
    lower_[o].set(o);
    for (auto b : below[o]) lower_[o] |= lower_[b];
  }
  upper_.assign(n_orbits, OrbitSet(n_orbits));
  for (std::size_t o = 0; o < n_orbits; ++o) lower_[o].for_each([&](std::size_t a) { upper_[a].set(o); });
}

}  // namespace rv14
