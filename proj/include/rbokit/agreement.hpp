#pragma once

#include "rbokit/fraction.hpp"
#include "rbokit/ranking.hpp"

namespace rbokit {

/// Agreement at one depth: the actual overlap term over the measurable
/// overlap term.
struct AgreementValue {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 1.0;
};

/// Exact per-depth sums of contributions over the universe of a pair.
/// `joint` is Σ c_S·c_L; `sum_*` are Σ c; `sumsq_*` are Σ c².
struct ContributionSums {
  Fraction joint;
  Fraction sum_s;
  Fraction sum_l;
  Fraction sumsq_s;
  Fraction sumsq_l;
};

/// Contribution sums under the convention of `v` (w uses indicator
/// contributions, everything else the fractional ones). Requires
/// 1 ≤ d ≤ min(|s|, |l|).
ContributionSums contribution_sums(const Ranking& s, const Ranking& l, Depth d, Variant v);

/// X_d / d; throws CrossingGroupAtDepth if either ranking has a group
/// straddling d.
AgreementValue agreement_base(const Ranking& s, const Ranking& l, Depth d);
AgreementValue agreement_w(const Ranking& s, const Ranking& l, Depth d);
AgreementValue agreement_a(const Ranking& s, const Ranking& l, Depth d);
AgreementValue agreement_b(const Ranking& s, const Ranking& l, Depth d);
AgreementValue agreement(const Ranking& s, const Ranking& l, Depth d, Variant v);

/// Rational agreement for base, w and a. The b variant is irrational in
/// general and throws std::invalid_argument.
Fraction agreement_exact(const Ranking& s, const Ranking& l, Depth d, Variant v);

}  // namespace rbokit
