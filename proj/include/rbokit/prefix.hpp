#pragma once

#include <span>
#include <string>
#include <vector>

#include "rbokit/fraction.hpp"
#include "rbokit/ranking.hpp"

namespace rbokit {

/// What is assumed about items beyond the seen prefixes.
///   min: unseen items never match anything.
///   max: unseen items match in the most favourable order.
///   ext: the agreement observed at the end of the shorter prefix persists.
enum class Assumption { min, max, ext };

std::string_view to_string(Assumption a) noexcept;

struct RboParams {
  double p = 0.9;
  Variant variant = Variant::a;
};

/// Throws InvalidPersistence unless 0 < p < 1.
void validate(const RboParams& params);

struct RboScores {
  double ext = 0.0;
  double min = 0.0;
  double max = 0.0;
  double res = 0.0;
};

/// One entry of the sequence of items found only in the longer ranking that
/// could still be matched by an unseen item of the shorter one.
struct UnmatchedEntry {
  std::string item;
  Fraction contribution;
};
using UnmatchedSequence = std::vector<UnmatchedEntry>;

struct UnseenContribution {
  double shorter = 0.0;  // assumed contribution of an unseen slot of S
  double longer = 0.0;   // expected contribution of the L item it matches
};

/// Per-depth quantities of one pair under one variant, built in a single
/// incremental pass over ranks 1..l. The shorter ranking plays S; ties in
/// length keep the argument order.
class DepthProfile {
 public:
  DepthProfile(const Ranking& a, const Ranking& b, Variant v);

  Variant variant() const noexcept { return variant_; }
  std::size_t shorter_length() const noexcept { return s_; }
  std::size_t longer_length() const noexcept { return l_; }
  /// X_l: size of the intersection of the two full prefixes.
  std::size_t final_overlap() const noexcept { return x_l_; }
  /// Depth where the MAX completion reaches full agreement: l + s − X_l.
  std::size_t full_agreement_depth() const noexcept { return l_ + s_ - x_l_; }

  /// Variant agreement for 1 ≤ d ≤ s.
  double agreement(Depth d) const;
  double agreement_at_shorter() const { return agreement(s_); }

  /// Agreement with assumed unseen overlap for s < d ≤ l.
  double assumed_agreement(Depth d, Assumption a) const;

  /// Expected contribution of the matched L item under EXT, s < d ≤ l
  /// (mean contribution over the unmatched sequence, 0 if it is empty).
  double unmatched_mean(Depth d) const;

 private:
  struct Section2 {
    double seen = 0.0;        // Σ c_S·c_L over seen items
    double max_unseen = 0.0;  // best pairing of the d−s unseen S slots
    double mean_unmatched = 0.0;
    double measurable = 1.0;  // variant denominator
  };

  Variant variant_;
  std::size_t s_ = 0;
  std::size_t l_ = 0;
  std::size_t x_l_ = 0;
  std::vector<double> agreement_;  // index d−1
  std::vector<Section2> tail_;     // index d−s−1
};

/// RBO of one pair under one variant, for any number of persistence values.
class RboEvaluator {
 public:
  RboEvaluator(const Ranking& a, const Ranking& b, Variant v) : profile_(a, b, v) {}

  /// Throws InvalidPersistence.
  RboScores scores(double p) const;

  // Raw sums of agreement·p^d over each section, before the (1−p)/p factor.
  double section1(double p) const;
  double section2(double p, Assumption a) const;
  double section3(double p, Assumption a) const;

  const DepthProfile& profile() const noexcept { return profile_; }

 private:
  DepthProfile profile_;
};

/// Prefix evaluation of RBO. Arguments may be given in either order.
/// Throws InvalidPersistence, and CrossingGroupAtDepth for the base variant
/// on tied input.
RboScores rbo(const Ranking& a, const Ranking& b, const RboParams& params);

/// Σ_{d=s+1}^{l} Ã_d·p^d; 0 when both rankings have the same length.
double section2_sum(const Ranking& a, const Ranking& b, const RboParams& params, Assumption assumption);

/// Σ_{d=l+1}^{∞} Ã_d·p^d in closed form.
double section3_sum(const Ranking& a, const Ranking& b, const RboParams& params, Assumption assumption);

/// Items only in the longer ranking with a positive contribution at depth d,
/// ordered by non-increasing contribution (rank order among equals).
/// Requires s < d ≤ l.
UnmatchedSequence unmatched_sequence(const Ranking& a, const Ranking& b, Depth d, Variant v = Variant::a);

/// The (c̃_S, c̃_L) pair that enters the assumed overlap once per unseen slot
/// under EXT. Requires s < d ≤ l.
UnseenContribution ext_unseen_contribution(const Ranking& a, const Ranking& b, Depth d, Variant v);

}  // namespace rbokit
