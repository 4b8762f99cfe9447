#pragma once

#include <cstdint>
#include <string>

#include "rbokit/ranking.hpp"

namespace rbokit {

struct SynthConfig {
  std::size_t n_items = 1000;
  double tau_min = 0.5;
  double tau_max = 1.0;
  double tie_min = 0.1;
  double tie_max = 1.0;
  std::size_t length_min = 10;
  std::size_t length_max = 100;
  std::size_t pair_count = 1000;
  std::uint64_t seed = 1;
  // Give the second ranking exactly the tie groups of the first, reordering
  // whole groups instead of items.
  bool shared_ties = false;
};

/// Throws std::invalid_argument on an empty or out-of-domain range.
void validate(const SynthConfig& cfg);

struct SynthMeta {
  std::size_t index = 0;
  double target_tau = 1.0;
  double realized_tau = 1.0;  // untied, full rankings (over groups if shared_ties)
  std::size_t transpositions = 0;
  double target_ties_first = 0.0;
  double target_ties_second = 0.0;
  double tied_first = 0.0;    // after truncation
  double tied_second = 0.0;
  std::size_t length_first = 0;
  std::size_t length_second = 0;
};

struct SynthPair {
  Ranking first;
  Ranking second;
  SynthMeta meta;
};

/// Pure function of (cfg, index).
SynthPair generate_pair(const SynthConfig& cfg, std::size_t index);

/// 1 − 4·discordant/(n(n−1)) by inversion counting. Throws NotConjoint or
/// HasTies.
double kendall_tau_untied(const Ranking& u, const Ranking& v);

/// Zero-padded item id shared by every synthetic ranking.
std::string synth_item(std::size_t i, std::size_t n_items);

}  // namespace rbokit
