#include "rbokit/synth.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "rbokit/error.hpp"
#include "rbokit/random.hpp"

namespace rbokit {
namespace {

// Reorders `order` (values are reference ranks 0..n−1, initially sorted) by
// uniformly chosen adjacent swaps of a concordant pair, so each step adds
// one discordant pair, until τ falls to `target` or below. Returns the
// number of swaps.
std::size_t transposition_walk(std::vector<std::uint32_t>& order, double target, SplitMix64& rng) {
  const std::size_t n = order.size();
  if (n < 2) return 0;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  std::size_t discordant = 0;
  auto tau = [&] { return 1.0 - 2.0 * static_cast<double>(discordant) / pairs; };

  // Concordant adjacent positions, with O(1) insert/erase via slot index.
  std::vector<std::uint32_t> live;
  std::vector<std::uint32_t> slot(n - 1, UINT32_MAX);
  auto add = [&](std::size_t i) {
    if (slot[i] != UINT32_MAX) return;
    slot[i] = static_cast<std::uint32_t>(live.size());
    live.push_back(static_cast<std::uint32_t>(i));
  };
  auto drop = [&](std::size_t i) {
    if (slot[i] == UINT32_MAX) return;
    const std::uint32_t last = live.back();
    live[slot[i]] = last;
    slot[last] = slot[i];
    live.pop_back();
    slot[i] = UINT32_MAX;
  };
  auto refresh = [&](std::size_t i) {
    if (i + 1 >= n) return;
    if (order[i] < order[i + 1])
      add(i);
    else
      drop(i);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) refresh(i);

  while (tau() > target && !live.empty()) {
    const std::size_t i = live[rng.below(live.size())];
    std::swap(order[i], order[i + 1]);
    ++discordant;
    if (i > 0) refresh(i - 1);
    refresh(i);
    refresh(i + 1);
  }
  return discordant;
}

// Group sizes after merging uniformly chosen adjacent boundaries until the
// share of items in groups of two or more reaches `target`.
std::vector<std::size_t> tie_groups(std::size_t n, double target, SplitMix64& rng) {
  if (target >= 1.0) return {n};
  std::vector<std::size_t> boundaries(n - 1);
  std::iota(boundaries.begin(), boundaries.end(), 0);
  rng.shuffle(boundaries);

  // Union-find over items; a boundary b joins items b and b+1.
  std::vector<std::size_t> parent(n), size(n, 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> merged(n - 1, false);
  std::size_t tied = 0;
  for (std::size_t b : boundaries) {
    if (static_cast<double>(tied) >= target * static_cast<double>(n)) break;
    std::size_t x = root(b), y = root(b + 1);
    tied += (size[x] == 1) + (size[y] == 1);
    if (size[x] < size[y]) std::swap(x, y);
    parent[y] = x;
    size[x] += size[y];
    merged[b] = true;
  }
  std::vector<std::size_t> groups{1};
  for (std::size_t b = 0; b + 1 < n; ++b) {
    if (merged[b])
      ++groups.back();
    else
      groups.push_back(1);
  }
  return groups;
}

// Largest prefix of whole groups not longer than `length`; the first group
// alone if even that is longer.
std::size_t cut_groups(const std::vector<std::size_t>& groups, std::size_t length) {
  std::size_t taken = 0, count = 0;
  for (std::size_t g : groups) {
    if (taken + g > length) break;
    taken += g;
    ++count;
  }
  return std::max<std::size_t>(count, 1);
}

Ranking assemble(const std::vector<std::vector<std::string>>& groups, std::size_t keep, double& tied) {
  std::vector<std::vector<std::string>> kept(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(keep));
  Ranking r(kept);
  std::size_t in_ties = 0;
  for (const auto& g : kept)
    if (g.size() > 1) in_ties += g.size();
  tied = static_cast<double>(in_ties) / static_cast<double>(r.size());
  return r;
}

std::vector<std::vector<std::string>> split(const std::vector<std::string>& items, const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<std::string>> out;
  auto it = items.begin();
  for (std::size_t g : sizes) {
    out.emplace_back(it, it + static_cast<std::ptrdiff_t>(g));
    it += static_cast<std::ptrdiff_t>(g);
  }
  return out;
}

}  // namespace

void validate(const SynthConfig& cfg) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("synthetic config: " + what); };
  if (cfg.n_items < 2) fail("need at least 2 items");
  if (!(cfg.tau_min <= cfg.tau_max) || cfg.tau_min < -1.0 || cfg.tau_max > 1.0) fail("tau range must lie in [-1, 1]");
  if (!(cfg.tie_min <= cfg.tie_max) || cfg.tie_min < 0.0 || cfg.tie_max > 1.0) fail("tie range must lie in [0, 1]");
  if (cfg.length_min < 1 || cfg.length_min > cfg.length_max) fail("bad truncation range");
  if (cfg.length_max > cfg.n_items) fail("truncation length exceeds the number of items");
}

std::string synth_item(std::size_t i, std::size_t n_items) {
  const std::size_t width = std::max<std::size_t>(4, fmt::formatted_size("{}", n_items - 1));
  return fmt::format("i{:0{}}", i, width);
}

SynthPair generate_pair(const SynthConfig& cfg, std::size_t index) {
  validate(cfg);
  SplitMix64 rng(derive_seed(cfg.seed, index));
  const std::size_t n = cfg.n_items;
  SynthMeta meta;
  meta.index = index;
  meta.target_tau = rng.uniform(cfg.tau_min, cfg.tau_max);

  std::vector<std::string> first(n);
  for (std::size_t i = 0; i < n; ++i) first[i] = synth_item(i, n);
  rng.shuffle(first);

  meta.target_ties_first = rng.uniform(cfg.tie_min, cfg.tie_max);
  std::vector<std::vector<std::string>> groups_first;
  std::vector<std::vector<std::string>> groups_second;
  double pairs = 0.0;
  if (!cfg.shared_ties) {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    meta.transpositions = transposition_walk(order, meta.target_tau, rng);
    pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    std::vector<std::string> second(n);
    for (std::size_t i = 0; i < n; ++i) second[i] = first[order[i]];

    meta.target_ties_second = rng.uniform(cfg.tie_min, cfg.tie_max);
    groups_first = split(first, tie_groups(n, meta.target_ties_first, rng));
    groups_second = split(second, tie_groups(n, meta.target_ties_second, rng));
  } else {
    groups_first = split(first, tie_groups(n, meta.target_ties_first, rng));
    meta.target_ties_second = meta.target_ties_first;
    const std::size_t g = groups_first.size();
    std::vector<std::uint32_t> order(g);
    std::iota(order.begin(), order.end(), 0);
    meta.transpositions = transposition_walk(order, meta.target_tau, rng);
    pairs = static_cast<double>(g) * static_cast<double>(g > 0 ? g - 1 : 0) / 2.0;
    for (std::uint32_t k : order) groups_second.push_back(groups_first[k]);
  }
  meta.realized_tau = pairs == 0.0 ? 1.0 : 1.0 - 2.0 * static_cast<double>(meta.transpositions) / pairs;

  auto sizes = [](const std::vector<std::vector<std::string>>& gs) {
    std::vector<std::size_t> out;
    for (const auto& g : gs) out.push_back(g.size());
    return out;
  };
  const auto len_first = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(cfg.length_min), static_cast<std::int64_t>(cfg.length_max)));
  const auto len_second = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(cfg.length_min), static_cast<std::int64_t>(cfg.length_max)));
  Ranking a = assemble(groups_first, cut_groups(sizes(groups_first), len_first), meta.tied_first);
  Ranking b = assemble(groups_second, cut_groups(sizes(groups_second), len_second), meta.tied_second);
  meta.length_first = a.size();
  meta.length_second = b.size();
  return {std::move(a), std::move(b), meta};
}

double kendall_tau_untied(const Ranking& u, const Ranking& v) {
  if (u.has_ties() || v.has_ties()) throw HasTies();
  if (u.size() != v.size()) throw NotConjoint();
  const std::size_t n = u.size();
  std::vector<std::size_t> seq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = v.bounds(u.items()[i]);
    if (!b) throw NotConjoint();
    seq[i] = b->top;
  }
  if (n < 2) return 1.0;

  // Bottom-up merge sort counting inversions.
  std::vector<std::size_t> buf(n);
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n), hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (seq[i] <= seq[j]) {
          buf[k++] = seq[i++];
        } else {
          inversions += mid - i;
          buf[k++] = seq[j++];
        }
      }
      while (i < mid) buf[k++] = seq[i++];
      while (j < hi) buf[k++] = seq[j++];
    }
    seq.swap(buf);
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 4.0 * static_cast<double>(inversions) / (nn * (nn - 1.0));
}

}  // namespace rbokit
