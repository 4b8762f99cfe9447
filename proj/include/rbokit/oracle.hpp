#pragma once

// Slow reference implementations. Nothing here shares code with the prefix
// engine beyond the Ranking type; tests and `rbokit verify` check the fast
// paths against these.

#include <cstdint>
#include <vector>

#include "rbokit/fraction.hpp"
#include "rbokit/prefix.hpp"
#include "rbokit/ranking.hpp"

namespace rbokit::oracle {

inline constexpr std::uint64_t kDefaultPermutationCap = 10'080;

/// Π over groups of (group size)!, saturating at UINT64_MAX.
std::uint64_t permutation_count(const Ranking& r);

/// Every untied ranking obtained by reordering items inside their groups.
/// Throws TooManyPermutations when the count exceeds `cap`.
std::vector<Ranking> enumerate_tie_permutations(const Ranking& r, std::uint64_t cap = kDefaultPermutationCap);

/// Mean of X_d/d over all pairs of permutations, in exact arithmetic.
Fraction agreement_a_enumerated(const Ranking& s, const Ranking& l, Depth d,
                                std::uint64_t cap = kDefaultPermutationCap);

/// (1−p)/p · Σ_d Ã_d p^d with every depth's agreement evaluated on its own,
/// summed until the remaining weight is below 1e-13, then closed with the
/// constant-agreement (MAX, EXT) or constant-overlap (MIN) tail.
double rbo_numeric(const Ranking& a, const Ranking& b, const RboParams& params, Assumption assumption);

/// Kendall's τ_b with midranks for tie groups. Throws NotConjoint, or
/// UndefinedCorrelation when a ranking is fully tied.
double kendall_tau_b(const Ranking& u, const Ranking& v);

/// Tie-unaware RBO of two untied prefixes: MIN and MAX by summing over the
/// explicit extremal completions, EXT by the classic closed form. Throws
/// HasTies.
RboScores bare_rbo_reference(const Ranking& a, const Ranking& b, double p);

/// Mean of bare_rbo_reference(...).ext over all pairs of tie permutations.
double mean_bare_ext_over_permutations(const Ranking& a, const Ranking& b, double p,
                                       std::uint64_t cap = kDefaultPermutationCap);

}  // namespace rbokit::oracle
