#include "rbokit/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rbokit/error.hpp"

namespace rbokit {
namespace {

void check_depth(const Ranking& s, const Ranking& l, Depth d) {
  if (d == 0) throw DepthOutOfRange("depth must be at least 1");
  if (d > std::min(s.size(), l.size()))
    throw DepthOutOfRange("depth " + std::to_string(d) + " exceeds the shorter ranking (" +
                          std::to_string(std::min(s.size(), l.size())) + ")");
}

// Number of leading items of r that can have a non-zero contribution at d:
// everything up to the bottom of the group covering d.
std::size_t live_prefix(const Ranking& r, Depth d) {
  return r.group_bounds(r.group_at(d)).bottom;
}

bool crossed(const Ranking& r, Depth d) {
  const TieBounds b = r.group_bounds(r.group_at(d));
  return b.bottom != d;
}

// Σ c and Σ c² over one ranking at depth d.
void single_sums(const Ranking& r, Depth d, Variant v, Fraction& sum, Fraction& sumsq) {
  const TieBounds cross = r.group_bounds(r.group_at(d));
  if (v == Variant::w || cross.bottom == d) {
    const auto n = static_cast<std::int64_t>(v == Variant::w ? cross.bottom : d);
    sum = Fraction(n);
    sumsq = Fraction(n);
    return;
  }
  const auto active = static_cast<std::int64_t>(cross.top - 1);
  const auto size = static_cast<std::int64_t>(cross.size());
  const auto open = static_cast<std::int64_t>(d - cross.top + 1);
  sum = Fraction(static_cast<std::int64_t>(d));
  // size items at open/size each
  sumsq = Fraction(active) + Fraction(open * open, size);
}

}  // namespace

ContributionSums contribution_sums(const Ranking& s, const Ranking& l, Depth d, Variant v) {
  check_depth(s, l, d);
  ContributionSums out;
  single_sums(s, d, v, out.sum_s, out.sumsq_s);
  single_sums(l, d, v, out.sum_l, out.sumsq_l);

  // Walk whichever ranking has fewer live items and probe the other.
  const bool walk_s = live_prefix(s, d) <= live_prefix(l, d);
  const Ranking& walk = walk_s ? s : l;
  const Ranking& probe = walk_s ? l : s;
  const std::size_t live = live_prefix(walk, d);
  for (std::size_t pos = 0; pos < live; ++pos) {
    const std::string& id = walk.items()[pos];
    const auto other = probe.bounds(id);
    if (!other || other->top > d) continue;
    out.joint += contribution(*walk.bounds(id), d, v) * contribution(*other, d, v);
  }
  return out;
}

AgreementValue agreement_base(const Ranking& s, const Ranking& l, Depth d) {
  check_depth(s, l, d);
  if (crossed(s, d) || crossed(l, d)) throw CrossingGroupAtDepth(d);
  const auto x = static_cast<double>(overlap(s, l, d));
  return {x / static_cast<double>(d), x, static_cast<double>(d)};
}

AgreementValue agreement_w(const Ranking& s, const Ranking& l, Depth d) {
  const ContributionSums c = contribution_sums(s, l, d, Variant::w);
  const double num = 2.0 * c.joint.to_double();
  const double den = c.sum_s.to_double() + c.sum_l.to_double();
  return {num / den, num, den};
}

AgreementValue agreement_a(const Ranking& s, const Ranking& l, Depth d) {
  const ContributionSums c = contribution_sums(s, l, d, Variant::a);
  const double num = c.joint.to_double();
  const double den = static_cast<double>(d);
  return {num / den, num, den};
}

AgreementValue agreement_b(const Ranking& s, const Ranking& l, Depth d) {
  const ContributionSums c = contribution_sums(s, l, d, Variant::b);
  const double num = c.joint.to_double();
  const double den = std::sqrt(c.sumsq_s.to_double()) * std::sqrt(c.sumsq_l.to_double());
  return {std::min(1.0, num / den), num, den};
}

AgreementValue agreement(const Ranking& s, const Ranking& l, Depth d, Variant v) {
  switch (v) {
    case Variant::base: return agreement_base(s, l, d);
    case Variant::w: return agreement_w(s, l, d);
    case Variant::a: return agreement_a(s, l, d);
    case Variant::b: return agreement_b(s, l, d);
  }
  throw std::invalid_argument("unknown variant");
}

Fraction agreement_exact(const Ranking& s, const Ranking& l, Depth d, Variant v) {
  switch (v) {
    case Variant::base:
      check_depth(s, l, d);
      if (crossed(s, d) || crossed(l, d)) throw CrossingGroupAtDepth(d);
      return Fraction(static_cast<std::int64_t>(overlap(s, l, d)), static_cast<std::int64_t>(d));
    case Variant::w: {
      const ContributionSums c = contribution_sums(s, l, d, Variant::w);
      return Fraction(2) * c.joint / (c.sum_s + c.sum_l);
    }
    case Variant::a:
      return contribution_sums(s, l, d, Variant::a).joint / Fraction(static_cast<std::int64_t>(d));
    case Variant::b:
      break;
  }
  throw std::invalid_argument("the b-variant agreement is not rational in general");
}

}  // namespace rbokit
