#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rbokit/ranking.hpp"

namespace rbokit {

struct TrecEntry {
  std::string doc;
  double score = 0.0;
  std::int64_t rank = 0;  // as given in the file; never used for ordering
};

struct TrecTopic {
  std::string id;
  std::vector<TrecEntry> entries;  // descending score, file order among equals
};

struct TrecRun {
  std::string tag;
  std::vector<TrecTopic> topics;  // order of first appearance

  const TrecTopic* find(std::string_view topic) const;
};

/// Six whitespace-separated columns per line: topic Q0 docid rank score tag.
/// Blank lines are skipped; anything else, '#' comments included, is
/// rejected. Throws MalformedLine, DuplicateDoc or EmptyRun.
TrecRun parse_run(std::istream& in);
TrecRun parse_run(std::string_view text);
TrecRun read_run(const std::filesystem::path& file);

/// Writes entries back in stored order with shortest round-trip scores.
std::string serialize_run(const TrecRun& run);

/// Equal scores (exact comparison) form one tie group. Throws UnknownTopic.
Ranking to_ranking(const TrecRun& run, std::string_view topic);
Ranking to_ranking(const TrecTopic& topic);

struct TieBreak {
  enum class Kind { random, docid };
  Kind kind = Kind::random;
  std::uint64_t seed = 0;

  static TieBreak by_docid() { return {Kind::docid, 0}; }
  static TieBreak at_random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Orders every group: lexicographically by id bytes, or by a uniform
/// shuffle drawn from the seed.
Ranking break_ties(const Ranking& r, const TieBreak& strategy);

struct TieStats {
  double runs_with_ties = 0.0;      // fraction of runs with a tied topic
  double rankings_with_ties = 0.0;  // fraction of (run, topic) rankings
  double docs_tied = 0.0;           // fraction of docs in a group of ≥ 2
  double avg_group_size = 0.0;      // over groups of ≥ 2 only
  bool avg_group_size_defined = false;  // false when there are no such groups
};

TieStats tie_stats(std::span<const TrecRun> runs);

/// Top-weighted share of ranks occupied by tied items:
/// Σ_{d≤n} [d tied]·p^d / Σ_{d≤n} p^d. Throws InvalidPersistence.
double tie_impact(const Ranking& r, double p);

}  // namespace rbokit
