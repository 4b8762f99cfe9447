#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rbokit/fraction.hpp"

namespace rbokit {

/// 1-based rank position.
using Depth = std::size_t;

/// Top and bottom rank of the tie group holding an item.
struct TieBounds {
  Depth top = 0;
  Depth bottom = 0;

  std::size_t size() const noexcept { return bottom - top + 1; }
  friend bool operator==(const TieBounds&, const TieBounds&) = default;
};

/// How tied items are treated.
///   base: tie-unaware; only valid on untied prefixes.
///   w:    sports ranking, every tied item sits at the top of its group.
///   a:    expectation over all orderings of the tied items.
///   b:    like `a`, normalized by the information actually available.
enum class Variant { base, w, a, b };

std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};
}  // namespace detail

/// An ordered sequence of tie groups. Items are opaque strings compared by
/// exact bytes; a singleton group is an untied item. Immutable once built.
class Ranking {
 public:
  /// Throws DuplicateItem, EmptyRanking, or std::invalid_argument for an
  /// empty group.
  explicit Ranking(const std::vector<std::vector<std::string>>& groups);

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t group_count() const noexcept { return group_end_.size(); }
  bool has_ties() const noexcept { return group_count() != size(); }

  /// Items in rank order; members of a group are contiguous.
  std::span<const std::string> items() const noexcept { return items_; }
  std::span<const std::string> group(std::size_t g) const;
  TieBounds group_bounds(std::size_t g) const;
  /// Group that covers a 1-based rank.
  std::size_t group_at(Depth rank) const;

  std::optional<std::size_t> group_of(std::string_view id) const;
  std::optional<TieBounds> bounds(std::string_view id) const;
  bool contains(std::string_view id) const { return index_.find(id) != index_.end(); }

  std::vector<std::vector<std::string>> groups() const;

 private:
  std::vector<std::string> items_;
  std::vector<std::size_t> group_end_;  // exclusive end offset == bottom rank
  std::vector<std::uint32_t> group_at_;  // per 0-based position
  std::unordered_map<std::string, std::size_t, detail::StringHash, std::equal_to<>> index_;
};

Ranking ranking_from_groups(const std::vector<std::vector<std::string>>& groups);

/// Ranking without ties, one item per rank.
Ranking untied_ranking(const std::vector<std::string>& items);

std::optional<TieBounds> tie_bounds(const Ranking& r, std::string_view e);

/// Fractional membership of `e` in the top `d` ranks of `r`. For a, b and
/// base this is the share of orderings of e's group that place e at or
/// above d; for w it is 1 as soon as the group has started. Items missing
/// from `r` contribute 0.
Fraction contribution(const Ranking& r, std::string_view e, Depth d, Variant v);

/// Same, from known bounds.
Fraction contribution(TieBounds b, Depth d, Variant v);

/// |S_{:d} ∩ L_{:d}| where an item counts once its whole group is above d.
std::size_t overlap(const Ranking& s, const Ranking& l, Depth d);

/// Items of `s` in rank order followed by the items only in `l`.
std::vector<std::string> universe(const Ranking& s, const Ranking& l);

/// Placement of one universe item in one ranking of a pair.
struct Placement {
  static constexpr std::uint32_t npos = UINT32_MAX;
  std::uint32_t group = npos;
  std::uint32_t top = 0;
  std::uint32_t bottom = 0;
  bool present() const noexcept { return group != npos; }
};

/// A ranking re-expressed over the integer universe of a pair.
struct InternedRanking {
  std::vector<std::uint32_t> order;      // universe index per 0-based position
  std::vector<std::size_t> group_end;    // exclusive end offset per group
  std::vector<Placement> placement;      // per universe index

  std::size_t size() const noexcept { return order.size(); }
  std::size_t group_begin(std::size_t g) const noexcept { return g == 0 ? 0 : group_end[g - 1]; }
};

/// Both rankings of a comparison interned against their union, so that all
/// per-item lookups are array indexing. Holds views into both rankings,
/// which must outlive it.
class PairIndex {
 public:
  PairIndex(const Ranking& first, const Ranking& second);

  std::size_t universe_size() const noexcept { return ids_.size(); }
  std::string_view id(std::uint32_t i) const { return ids_[i]; }
  const InternedRanking& first() const noexcept { return first_; }
  const InternedRanking& second() const noexcept { return second_; }

 private:
  std::vector<std::string_view> ids_;
  InternedRanking first_;
  InternedRanking second_;
};

/// Plain-ranking text format: one tie group per line, items separated by
/// whitespace, '#' starts a comment line, blank lines are ignored.
Ranking parse_plain_ranking(std::istream& in);
Ranking parse_plain_ranking(std::string_view text);
std::string format_plain_ranking(const Ranking& r);

}  // namespace rbokit
