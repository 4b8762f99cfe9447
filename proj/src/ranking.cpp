#include "rbokit/ranking.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "rbokit/error.hpp"

namespace rbokit {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::base: return "base";
    case Variant::w: return "w";
    case Variant::a: return "a";
    case Variant::b: return "b";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  if (name == "base") return Variant::base;
  if (name == "w") return Variant::w;
  if (name == "a") return Variant::a;
  if (name == "b") return Variant::b;
  return std::nullopt;
}

Ranking::Ranking(const std::vector<std::vector<std::string>>& groups) {
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("tie group must not be empty");
    total += g.size();
  }
  if (total == 0) throw EmptyRanking();

  items_.reserve(total);
  group_end_.reserve(groups.size());
  group_at_.reserve(total);
  index_.reserve(total);
  for (const auto& g : groups) {
    const auto gi = static_cast<std::uint32_t>(group_end_.size());
    for (const auto& id : g) {
      if (!index_.emplace(id, items_.size()).second) throw DuplicateItem(id);
      items_.push_back(id);
      group_at_.push_back(gi);
    }
    group_end_.push_back(items_.size());
  }
}

std::span<const std::string> Ranking::group(std::size_t g) const {
  const TieBounds b = group_bounds(g);
  return std::span<const std::string>(items_).subspan(b.top - 1, b.size());
}

TieBounds Ranking::group_bounds(std::size_t g) const {
  if (g >= group_end_.size()) throw std::out_of_range("group index out of range");
  const std::size_t begin = g == 0 ? 0 : group_end_[g - 1];
  return {begin + 1, group_end_[g]};
}

std::size_t Ranking::group_at(Depth rank) const {
  if (rank == 0 || rank > items_.size()) throw DepthOutOfRange("rank outside ranking");
  return group_at_[rank - 1];
}

std::optional<std::size_t> Ranking::group_of(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return group_at_[it->second];
}

std::optional<TieBounds> Ranking::bounds(std::string_view id) const {
  const auto g = group_of(id);
  if (!g) return std::nullopt;
  return group_bounds(*g);
}

std::vector<std::vector<std::string>> Ranking::groups() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(group_count());
  for (std::size_t g = 0; g < group_count(); ++g) {
    const auto span = group(g);
    out.emplace_back(span.begin(), span.end());
  }
  return out;
}

Ranking ranking_from_groups(const std::vector<std::vector<std::string>>& groups) { return Ranking(groups); }

Ranking untied_ranking(const std::vector<std::string>& items) {
  std::vector<std::vector<std::string>> groups;
  groups.reserve(items.size());
  for (const auto& id : items) groups.push_back({id});
  return Ranking(groups);
}

std::optional<TieBounds> tie_bounds(const Ranking& r, std::string_view e) { return r.bounds(e); }

Fraction contribution(TieBounds b, Depth d, Variant v) {
  if (d == 0) throw DepthOutOfRange("depth must be at least 1");
  if (d < b.top) return Fraction(0);
  if (v == Variant::w || b.bottom <= d) return Fraction(1);
  return Fraction(static_cast<std::int64_t>(d - b.top + 1), static_cast<std::int64_t>(b.size()));
}

Fraction contribution(const Ranking& r, std::string_view e, Depth d, Variant v) {
  if (d == 0) throw DepthOutOfRange("depth must be at least 1");
  const auto b = r.bounds(e);
  if (!b) return Fraction(0);
  return contribution(*b, d, v);
}

std::size_t overlap(const Ranking& s, const Ranking& l, Depth d) {
  if (d == 0) throw DepthOutOfRange("depth must be at least 1");
  const Ranking& small = s.size() <= l.size() ? s : l;
  const Ranking& other = &small == &s ? l : s;
  std::size_t x = 0;
  for (const auto& id : small.items()) {
    const auto mine = small.bounds(id);
    if (mine->top > d) break;
    if (mine->bottom > d) continue;
    const auto theirs = other.bounds(id);
    if (theirs && theirs->bottom <= d) ++x;
  }
  return x;
}

std::vector<std::string> universe(const Ranking& s, const Ranking& l) {
  std::vector<std::string> out(s.items().begin(), s.items().end());
  for (const auto& id : l.items())
    if (!s.contains(id)) out.push_back(id);
  return out;
}

namespace {

InternedRanking intern(const Ranking& r,
                       std::unordered_map<std::string_view, std::uint32_t>& ids,
                       std::vector<std::string_view>& names) {
  InternedRanking out;
  out.order.reserve(r.size());
  out.group_end.reserve(r.group_count());
  for (std::size_t g = 0; g < r.group_count(); ++g) {
    for (const auto& id : r.group(g)) {
      auto [it, fresh] = ids.emplace(id, static_cast<std::uint32_t>(names.size()));
      if (fresh) names.push_back(id);
      out.order.push_back(it->second);
    }
    out.group_end.push_back(out.order.size());
  }
  return out;
}

void place(InternedRanking& r, std::size_t universe) {
  r.placement.assign(universe, Placement{});
  for (std::size_t g = 0; g < r.group_end.size(); ++g) {
    const std::size_t begin = r.group_begin(g);
    for (std::size_t pos = begin; pos < r.group_end[g]; ++pos) {
      r.placement[r.order[pos]] = Placement{static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(begin + 1),
                                            static_cast<std::uint32_t>(r.group_end[g])};
    }
  }
}

}  // namespace

PairIndex::PairIndex(const Ranking& first, const Ranking& second) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  ids.reserve(first.size() + second.size());
  first_ = intern(first, ids, ids_);
  second_ = intern(second, ids, ids_);
  place(first_, ids_.size());
  place(second_, ids_.size());
}

Ranking parse_plain_ranking(std::istream& in) {
  std::vector<std::vector<std::string>> groups;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<std::string> group;
    std::string id;
    while (fields >> id) {
      if (group.empty() && id.front() == '#') break;
      group.push_back(std::move(id));
    }
    if (!group.empty()) groups.push_back(std::move(group));
  }
  return Ranking(groups);
}

Ranking parse_plain_ranking(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_plain_ranking(in);
}

std::string format_plain_ranking(const Ranking& r) {
  std::string out;
  for (std::size_t g = 0; g < r.group_count(); ++g) {
    bool first = true;
    for (const auto& id : r.group(g)) {
      if (!first) out += ' ';
      out += id;
      first = false;
    }
    out += '\n';
  }
  return out;
}

}  // namespace rbokit
