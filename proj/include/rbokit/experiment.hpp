#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbokit/prefix.hpp"
#include "rbokit/ranking.hpp"
#include "rbokit/synth.hpp"
#include "rbokit/trec.hpp"

namespace rbokit {

enum class DiffBucket { small, medium, large };

/// small: [0, 0.01]; medium: (0.01, 0.1]; large: above 0.1.
DiffBucket classify(double abs_diff) noexcept;

struct PairResult {
  double p = 0.0;
  double bare_random = 0.0;  // bare EXT, ties broken at random
  double bare_docid = 0.0;   // bare EXT, ties broken by id
  RboScores w, a, b;
};

struct PairRecord {
  std::vector<std::string> key;  // caller-formatted identifying columns
  std::size_t length_first = 0;
  std::size_t length_second = 0;
  double tied_first = 0.0;
  double tied_second = 0.0;
  bool has_ties = false;
  std::vector<double> impact_first;   // tie_impact per p
  std::vector<double> impact_second;
  std::vector<PairResult> results;    // per p
};

/// Bare RBO under both tie breaks and the three tie-aware variants, for each
/// p. The random tie break of each ranking draws from streams derived from
/// `tie_seed`.
PairRecord score_pair(const Ranking& first, const Ranking& second, std::span<const double> ps,
                      std::uint64_t tie_seed);

/// Worker count: RBO_KIT_THREADS if set and positive, otherwise the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Runs fn(0..count−1) on up to `threads` workers. Each index is handled
/// exactly once; ordering of side effects is up to fn.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

struct ExperimentOutput {
  std::vector<std::string> key_header;
  std::vector<double> ps;
  std::vector<PairRecord> records;  // input order
};

ExperimentOutput run_synth_experiment(const SynthConfig& cfg, std::span<const double> ps, std::size_t threads);

struct NamedRun {
  std::string name;
  TrecRun run;
};

/// Every topic of the first run that the second also has, for each pair of
/// run indices.
ExperimentOutput run_trec_experiment(std::span<const NamedRun> runs,
                                     std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                     std::span<const double> ps, std::uint64_t seed, std::size_t threads);

/// All unordered pairs of runs whose tags share the first `prefix_len`
/// characters.
std::vector<std::pair<std::size_t, std::size_t>> pairs_by_tag_prefix(std::span<const NamedRun> runs,
                                                                     std::size_t prefix_len);

struct VariantSummary {
  double avg = 0.0;
  double max = 0.0;
  double medium = 0.0;  // share of pairs in (0.01, 0.1]
  double large = 0.0;   // share above 0.1
};

struct SummaryRow {
  std::string baseline;  // "random" or "docid"
  double p = 0.0;
  std::size_t pairs = 0;
  VariantSummary w, a, b;
};

/// |bare − variant EXT| statistics over the pairs where at least one ranking
/// has ties; one row per (baseline, p).
std::vector<SummaryRow> summarize(const ExperimentOutput& out);

/// CSV, '.' decimals, 12 significant digits, header row.
void write_pairs_csv(std::ostream& os, const ExperimentOutput& out);
void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows);

/// Shared number formatting for every CSV the tool writes.
std::string csv_number(double x);

}  // namespace rbokit
