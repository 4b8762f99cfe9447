#include "rbokit/prefix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rbokit/error.hpp"

namespace rbokit {

std::string_view to_string(Assumption a) noexcept {
  switch (a) {
    case Assumption::min: return "min";
    case Assumption::max: return "max";
    case Assumption::ext: return "ext";
  }
  return "?";
}

void validate(const RboParams& params) {
  if (!(params.p > 0.0 && params.p < 1.0)) throw InvalidPersistence(params.p);
}

namespace {

enum : std::uint8_t { kInactive = 0, kCrossing = 1, kActive = 2 };

// Incremental state of one ranking of the pair while the depth advances.
struct Side {
  const InternedRanking* r = nullptr;
  std::vector<std::uint8_t> state;      // per universe item
  std::vector<std::uint32_t> peer_active;  // per group: members active in the other ranking
  std::vector<std::uint32_t> peer_cross;   // per group: members crossing in the other ranking
  std::size_t active = 0;
  std::size_t group = 0;  // group covering the current depth

  std::size_t length() const { return r->size(); }
  std::size_t top(std::size_t g) const { return r->group_begin(g) + 1; }
  std::size_t bottom(std::size_t g) const { return r->group_end[g]; }
};

class Sweep {
 public:
  Sweep(const PairIndex& index, bool sports) : sports_(sports) {
    init(s_, index.first(), index.universe_size());
    init(l_, index.second(), index.universe_size());
  }

  // Moves both rankings to depth d (called with d = 1, 2, ...).
  void advance(Depth d) {
    step(s_, l_, d);
    step(l_, s_, d);
  }

  struct Crossing {
    bool open = false;
    std::size_t group = 0;
    std::size_t size = 0;
    double share = 0.0;  // contribution of each member
  };

  Crossing crossing(const Side& x, Depth d) const {
    Crossing c;
    if (sports_ || d > x.length()) return c;
    const std::size_t g = x.group;
    if (x.bottom(g) == d) return c;
    c.open = true;
    c.group = g;
    c.size = x.bottom(g) - x.top(g) + 1;
    c.share = static_cast<double>(d - x.top(g) + 1) / static_cast<double>(c.size);
    return c;
  }

  const Side& s() const { return s_; }
  const Side& l() const { return l_; }
  std::size_t both_active() const { return both_active_; }

 private:
  static void init(Side& x, const InternedRanking& r, std::size_t universe) {
    x.r = &r;
    x.state.assign(universe, kInactive);
    x.peer_active.assign(r.group_end.size(), 0);
    x.peer_cross.assign(r.group_end.size(), 0);
  }

  void set_state(Side& self, Side& peer, std::uint32_t item, std::uint8_t next) {
    const std::uint8_t prev = self.state[item];
    self.state[item] = next;
    const int became_active = (next == kActive) - (prev == kActive);
    self.active += became_active;
    const Placement& there = peer.r->placement[item];
    if (!there.present()) return;
    peer.peer_active[there.group] += became_active;
    peer.peer_cross[there.group] += (next == kCrossing) - (prev == kCrossing);
    if (peer.state[item] == kActive) both_active_ += became_active;
  }

  void step(Side& self, Side& peer, Depth d) {
    if (d > self.length()) return;
    const std::size_t g = self.r->placement[self.r->order[d - 1]].group;
    self.group = g;
    const std::size_t top = self.top(g);
    const std::size_t bottom = self.bottom(g);
    if (d == top) {
      const std::uint8_t next = (sports_ || top == bottom) ? kActive : kCrossing;
      for (std::size_t pos = top - 1; pos < bottom; ++pos) set_state(self, peer, self.r->order[pos], next);
    } else if (d == bottom && !sports_) {
      for (std::size_t pos = top - 1; pos < bottom; ++pos) set_state(self, peer, self.r->order[pos], kActive);
    }
  }

  bool sports_;
  Side s_;
  Side l_;
  std::size_t both_active_ = 0;
};

bool any_ties(const InternedRanking& r) { return r.group_end.size() != r.order.size(); }

Depth first_crossing_depth(const InternedRanking& r) {
  for (std::size_t g = 0; g < r.group_end.size(); ++g)
    if (r.group_end[g] - r.group_begin(g) > 1) return r.group_begin(g) + 1;
  return 0;
}

}  // namespace

DepthProfile::DepthProfile(const Ranking& a, const Ranking& b, Variant v) : variant_(v) {
  const bool swap = a.size() > b.size();
  const Ranking& shorter = swap ? b : a;
  const Ranking& longer = swap ? a : b;
  s_ = shorter.size();
  l_ = longer.size();

  const PairIndex index(shorter, longer);
  if (v == Variant::base) {
    if (any_ties(index.first())) throw CrossingGroupAtDepth(first_crossing_depth(index.first()));
    if (any_ties(index.second())) throw CrossingGroupAtDepth(first_crossing_depth(index.second()));
  }

  const bool sports = v == Variant::w;
  Sweep sweep(index, sports);
  agreement_.resize(s_);
  tail_.resize(l_ - s_);

  for (Depth d = 1; d <= l_; ++d) {
    sweep.advance(d);
    const auto cs = sweep.crossing(sweep.s(), d);
    const auto cl = sweep.crossing(sweep.l(), d);

    double joint = static_cast<double>(sweep.both_active());
    if (cl.open) joint += cl.share * sweep.l().peer_active[cl.group];
    if (cs.open) joint += cs.share * sweep.s().peer_active[cs.group];
    if (cs.open && cl.open) joint += cs.share * cl.share * sweep.l().peer_cross[cl.group];

    const auto active_l = static_cast<double>(sweep.l().active);
    const double sumsq_l = active_l + (cl.open ? cl.size * cl.share * cl.share : 0.0);
    const auto dd = static_cast<double>(d);

    if (d <= s_) {
      double value = 0.0;
      switch (v) {
        case Variant::base:
        case Variant::a: value = joint / dd; break;
        case Variant::w: value = 2.0 * joint / (static_cast<double>(sweep.s().active) + active_l); break;
        case Variant::b: {
          const auto active_s = static_cast<double>(sweep.s().active);
          const double sumsq_s = active_s + (cs.open ? cs.size * cs.share * cs.share : 0.0);
          value = std::min(1.0, joint / (std::sqrt(sumsq_s) * std::sqrt(sumsq_l)));
          break;
        }
      }
      agreement_[d - 1] = value;
      continue;
    }

    // Past the end of S every seen S item is active, so items unique to L
    // split into fully active ones and members of L's crossing group.
    Section2& t = tail_[d - s_ - 1];
    t.seen = joint;
    const std::size_t only_active = sweep.l().active - sweep.both_active();
    const std::size_t only_cross = cl.open ? cl.size - sweep.l().peer_active[cl.group] : 0;
    const std::size_t slots = d - s_;
    const std::size_t take_active = std::min(slots, only_active);
    const std::size_t take_cross = std::min(slots - take_active, only_cross);
    t.max_unseen = static_cast<double>(take_active) + static_cast<double>(take_cross) * cl.share;
    const std::size_t candidates = only_active + only_cross;
    t.mean_unmatched = candidates == 0
                           ? 0.0
                           : (static_cast<double>(only_active) + static_cast<double>(only_cross) * cl.share) /
                                 static_cast<double>(candidates);
    switch (v) {
      case Variant::base:
      case Variant::a: t.measurable = dd; break;
      case Variant::w: t.measurable = dd + active_l; break;
      case Variant::b: t.measurable = std::sqrt(dd) * std::sqrt(sumsq_l); break;
    }
  }
  x_l_ = sweep.both_active();
}

double DepthProfile::agreement(Depth d) const {
  if (d == 0 || d > s_) throw DepthOutOfRange("depth outside the shorter prefix");
  return agreement_[d - 1];
}

double DepthProfile::assumed_agreement(Depth d, Assumption a) const {
  if (d <= s_ || d > l_) throw DepthOutOfRange("depth outside the section seen only in the longer ranking");
  const Section2& t = tail_[d - s_ - 1];
  double overlap = t.seen;
  if (a == Assumption::max) overlap += t.max_unseen;
  if (a == Assumption::ext)
    overlap += static_cast<double>(d - s_) * agreement_at_shorter() * t.mean_unmatched;
  const double factor = variant_ == Variant::w ? 2.0 : 1.0;
  return std::min(1.0, factor * overlap / t.measurable);
}

double DepthProfile::unmatched_mean(Depth d) const {
  if (d <= s_ || d > l_) throw DepthOutOfRange("depth outside the section seen only in the longer ranking");
  return tail_[d - s_ - 1].mean_unmatched;
}

double RboEvaluator::section1(double p) const {
  validate({p, profile_.variant()});
  double sum = 0.0;
  double weight = 1.0;
  for (Depth d = 1; d <= profile_.shorter_length(); ++d) {
    weight *= p;
    sum += profile_.agreement(d) * weight;
  }
  return sum;
}

double RboEvaluator::section2(double p, Assumption a) const {
  validate({p, profile_.variant()});
  const std::size_t s = profile_.shorter_length();
  const std::size_t l = profile_.longer_length();
  if (s == l) return 0.0;
  double sum = 0.0;
  double weight = std::pow(p, static_cast<double>(s));
  for (Depth d = s + 1; d <= l; ++d) {
    weight *= p;
    sum += profile_.assumed_agreement(d, a) * weight;
  }
  return sum;
}

double RboEvaluator::section3(double p, Assumption a) const {
  validate({p, profile_.variant()});
  const auto s = static_cast<double>(profile_.shorter_length());
  const std::size_t l = profile_.longer_length();
  const auto x_l = static_cast<double>(profile_.final_overlap());
  const double p_l = std::pow(p, static_cast<double>(l));

  switch (a) {
    case Assumption::min: {
      // Overlap stays at X_l forever: X_l · Σ_{d>l} p^d/d.
      double head = 0.0;
      double weight = 1.0;
      for (Depth d = 1; d <= l; ++d) {
        weight *= p;
        head += weight / static_cast<double>(d);
      }
      return x_l * std::max(0.0, -std::log1p(-p) - head);
    }
    case Assumption::max: {
      // Overlap grows by 2 per rank until both completions hold the same
      // items at depth f, then agreement is 1.
      const std::size_t f = profile_.full_agreement_depth();
      const auto ll = static_cast<double>(l);
      double sum = 0.0;
      double weight = p_l;
      for (Depth d = l + 1; d <= f; ++d) {
        weight *= p;
        const auto dd = static_cast<double>(d);
        sum += (2.0 * dd - ll - s + x_l) / dd * weight;
      }
      return sum + weight * p / (1.0 - p);
    }
    case Assumption::ext: {
      const auto ll = static_cast<double>(l);
      const double extrapolated = (x_l + profile_.agreement_at_shorter() * (ll - s)) / ll;
      return extrapolated * p_l * p / (1.0 - p);
    }
  }
  return 0.0;
}

RboScores RboEvaluator::scores(double p) const {
  validate({p, profile_.variant()});
  const double scale = (1.0 - p) / p;
  const double head = section1(p);
  auto total = [&](Assumption a) { return std::clamp(scale * (head + section2(p, a) + section3(p, a)), 0.0, 1.0); };
  RboScores out;
  out.ext = total(Assumption::ext);
  out.min = total(Assumption::min);
  out.max = total(Assumption::max);
  out.res = out.max - out.min;
  return out;
}

RboScores rbo(const Ranking& a, const Ranking& b, const RboParams& params) {
  validate(params);
  return RboEvaluator(a, b, params.variant).scores(params.p);
}

double section2_sum(const Ranking& a, const Ranking& b, const RboParams& params, Assumption assumption) {
  validate(params);
  return RboEvaluator(a, b, params.variant).section2(params.p, assumption);
}

double section3_sum(const Ranking& a, const Ranking& b, const RboParams& params, Assumption assumption) {
  validate(params);
  return RboEvaluator(a, b, params.variant).section3(params.p, assumption);
}

UnmatchedSequence unmatched_sequence(const Ranking& a, const Ranking& b, Depth d, Variant v) {
  const Ranking& shorter = a.size() > b.size() ? b : a;
  const Ranking& longer = a.size() > b.size() ? a : b;
  if (d <= shorter.size() || d > longer.size())
    throw DepthOutOfRange("depth outside the section seen only in the longer ranking");

  UnmatchedSequence out;
  for (const auto& id : longer.items()) {
    if (shorter.contains(id)) continue;
    const Fraction c = contribution(*longer.bounds(id), d, v);
    if (c == Fraction(0)) break;  // rank order: everything after is inactive too
    out.push_back({id, c});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const UnmatchedEntry& x, const UnmatchedEntry& y) { return x.contribution > y.contribution; });
  return out;
}

UnseenContribution ext_unseen_contribution(const Ranking& a, const Ranking& b, Depth d, Variant v) {
  const DepthProfile profile(a, b, v);
  return {profile.agreement_at_shorter(), profile.unmatched_mean(d)};
}

}  // namespace rbokit
