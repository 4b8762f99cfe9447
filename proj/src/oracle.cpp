#include "rbokit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <unordered_set>

#include "rbokit/error.hpp"

namespace rbokit::oracle {
namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

void check_cap(const Ranking& r, std::uint64_t cap) {
  const std::uint64_t n = permutation_count(r);
  if (n > cap)
    throw TooManyPermutations(std::to_string(n) + " tie permutations exceed the cap of " + std::to_string(cap));
}

// Contribution straight from the definition, in floating point.
double contrib(const Ranking& r, const std::string& id, Depth d, Variant v) {
  const auto b = r.bounds(id);
  if (!b || d < b->top) return 0.0;
  if (v == Variant::w || b->bottom <= d) return 1.0;
  return static_cast<double>(d - b->top + 1) / static_cast<double>(b->bottom - b->top + 1);
}

std::size_t strict_overlap(const std::vector<std::string>& s, const std::vector<std::string>& l, Depth d) {
  std::unordered_set<std::string> top(s.begin(), s.begin() + std::min(d, s.size()));
  std::size_t x = 0;
  for (std::size_t i = 0; i < std::min(d, l.size()); ++i) x += top.count(l[i]);
  return x;
}

// Σ_{d=1}^{depth} X_d/d·p^d for two explicit item sequences of equal length.
double truncated_bare_sum(const std::vector<std::string>& s, const std::vector<std::string>& l, double p,
                          std::size_t depth, std::size_t& final_overlap) {
  std::unordered_set<std::string> seen_s;
  std::unordered_set<std::string> seen_l;
  std::size_t x = 0;
  double sum = 0.0;
  double weight = 1.0;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::string& a = s[d - 1];
    const std::string& b = l[d - 1];
    if (a == b) {
      ++x;
    } else {
      x += seen_l.count(a);
      x += seen_s.count(b);
    }
    seen_s.insert(a);
    seen_l.insert(b);
    weight *= p;
    sum += static_cast<double>(x) / static_cast<double>(d) * weight;
  }
  final_overlap = x;
  return sum;
}

std::size_t depth_for_tail(double p, std::size_t at_least) {
  std::size_t depth = at_least;
  while (std::pow(p, static_cast<double>(depth + 1)) / (1.0 - p) >= 1e-13) ++depth;
  return depth;
}

// Classic closed-form EXT of two untied prefixes, s no longer than l.
double bare_ext(const std::vector<std::string>& s, const std::vector<std::string>& l, double p) {
  const std::size_t sl = s.size();
  const std::size_t ll = l.size();
  const auto x_s = static_cast<double>(strict_overlap(s, l, sl));
  const auto x_l = static_cast<double>(strict_overlap(s, l, ll));
  double sum = 0.0;
  double weight = 1.0;
  for (std::size_t d = 1; d <= ll; ++d) {
    weight *= p;
    const auto dd = static_cast<double>(d);
    sum += static_cast<double>(strict_overlap(s, l, d)) / dd * weight;
    if (d > sl) sum += x_s * (dd - static_cast<double>(sl)) / (static_cast<double>(sl) * dd) * weight;
  }
  return (1.0 - p) / p * sum +
         ((x_l - x_s) / static_cast<double>(ll) + x_s / static_cast<double>(sl)) * std::pow(p, static_cast<double>(ll));
}

std::vector<std::string> flat(const Ranking& r) { return {r.items().begin(), r.items().end()}; }

}  // namespace

std::uint64_t permutation_count(const Ranking& r) {
  std::uint64_t count = 1;
  for (std::size_t g = 0; g < r.group_count(); ++g)
    for (std::uint64_t k = 2; k <= r.group(g).size(); ++k) count = saturating_mul(count, k);
  return count;
}

std::vector<Ranking> enumerate_tie_permutations(const Ranking& r, std::uint64_t cap) {
  check_cap(r, cap);
  std::vector<std::vector<std::string>> groups = r.groups();
  for (auto& g : groups) std::sort(g.begin(), g.end());

  // Odometer over the groups, each cycling through its lexicographic
  // permutations.
  std::vector<Ranking> out;
  out.reserve(permutation_count(r));
  while (true) {
    std::vector<std::string> flat;
    flat.reserve(r.size());
    for (const auto& g : groups) flat.insert(flat.end(), g.begin(), g.end());
    out.push_back(untied_ranking(flat));

    std::size_t g = groups.size();
    while (g > 0) {
      --g;
      if (std::next_permutation(groups[g].begin(), groups[g].end())) break;
      if (g == 0) return out;
    }
    if (groups.empty()) return out;
  }
}

Fraction agreement_a_enumerated(const Ranking& s, const Ranking& l, Depth d, std::uint64_t cap) {
  const auto ps = enumerate_tie_permutations(s, cap);
  const auto pl = enumerate_tie_permutations(l, cap);
  std::int64_t total = 0;
  for (const auto& a : ps) {
    const std::vector<std::string> sa(a.items().begin(), a.items().end());
    for (const auto& b : pl) {
      const std::vector<std::string> lb(b.items().begin(), b.items().end());
      total += static_cast<std::int64_t>(strict_overlap(sa, lb, d));
    }
  }
  const auto pairs = static_cast<std::int64_t>(ps.size() * pl.size());
  return Fraction(total, pairs * static_cast<std::int64_t>(d));
}

double rbo_numeric(const Ranking& a, const Ranking& b, const RboParams& params, Assumption assumption) {
  validate(params);
  const Ranking& S = a.size() > b.size() ? b : a;
  const Ranking& L = a.size() > b.size() ? a : b;
  const std::size_t s = S.size();
  const std::size_t l = L.size();
  const double p = params.p;
  const Variant v = params.variant == Variant::base ? Variant::a : params.variant;
  const std::vector<std::string> omega = universe(S, L);

  auto seen_agreement = [&](Depth d) {
    double joint = 0.0, sum_s = 0.0, sum_l = 0.0, sq_s = 0.0, sq_l = 0.0;
    for (const auto& id : omega) {
      const double cs = contrib(S, id, d, v);
      const double cl = contrib(L, id, d, v);
      joint += cs * cl;
      sum_s += cs;
      sum_l += cl;
      sq_s += cs * cs;
      sq_l += cl * cl;
    }
    switch (v) {
      case Variant::w: return 2.0 * joint / (sum_s + sum_l);
      case Variant::b: return joint / (std::sqrt(sq_s) * std::sqrt(sq_l));
      default: return joint / static_cast<double>(d);
    }
  };

  const double a_s = seen_agreement(s);
  const std::vector<std::string> s_items(S.items().begin(), S.items().end());
  const std::vector<std::string> l_items(L.items().begin(), L.items().end());
  const auto x_l = static_cast<double>(strict_overlap(s_items, l_items, l));
  const std::size_t f = l + s - static_cast<std::size_t>(x_l);

  auto assumed_agreement = [&](Depth d) {
    double seen = 0.0, sum_l = 0.0, sq_l = 0.0;
    std::vector<double> unmatched;
    for (const auto& id : omega) {
      const double cs = contrib(S, id, d, v);
      const double cl = contrib(L, id, d, v);
      seen += cs * cl;
      sum_l += cl;
      sq_l += cl * cl;
      if (cs == 0.0 && cl > 0.0) unmatched.push_back(cl);
    }
    std::sort(unmatched.begin(), unmatched.end(), std::greater<>());
    const std::size_t slots = d - s;
    double unseen = 0.0;
    if (assumption == Assumption::max) {
      for (std::size_t k = 0; k < std::min(slots, unmatched.size()); ++k) unseen += unmatched[k];
    } else if (assumption == Assumption::ext && !unmatched.empty()) {
      double mean = 0.0;
      for (double c : unmatched) mean += c;
      mean /= static_cast<double>(unmatched.size());
      unseen = static_cast<double>(slots) * a_s * mean;
    }
    const double x = seen + unseen;
    const auto dd = static_cast<double>(d);
    switch (v) {
      case Variant::w: return 2.0 * x / (dd + sum_l);
      case Variant::b: return x / (std::sqrt(dd) * std::sqrt(sq_l));
      default: return x / dd;
    }
  };

  auto beyond_agreement = [&](Depth d) {
    const auto dd = static_cast<double>(d);
    switch (assumption) {
      case Assumption::min: return x_l / dd;
      case Assumption::max:
        return std::min(1.0, (2.0 * dd - static_cast<double>(l) - static_cast<double>(s) + x_l) / dd);
      case Assumption::ext: return (x_l + a_s * static_cast<double>(l - s)) / static_cast<double>(l);
    }
    return 0.0;
  };

  const std::size_t depth = depth_for_tail(p, std::max(f, l));
  double sum = 0.0;
  double weight = 1.0;
  for (Depth d = 1; d <= depth; ++d) {
    weight *= p;
    double agreement = 0.0;
    if (d <= s)
      agreement = seen_agreement(d);
    else if (d <= l)
      agreement = assumed_agreement(d);
    else
      agreement = beyond_agreement(d);
    sum += agreement * weight;
  }
  const double tail_weight = weight * p / (1.0 - p);
  if (assumption == Assumption::min)
    sum += x_l * tail_weight / static_cast<double>(depth + 1);
  else
    sum += beyond_agreement(depth + 1) * tail_weight;
  return (1.0 - p) / p * sum;
}

double kendall_tau_b(const Ranking& u, const Ranking& v) {
  if (u.size() != v.size()) throw NotConjoint();
  for (const auto& id : u.items())
    if (!v.contains(id)) throw NotConjoint();

  const std::vector<std::string> ids(u.items().begin(), u.items().end());
  auto midrank = [](const Ranking& r, const std::string& id) {
    const TieBounds b = *r.bounds(id);
    return 0.5 * static_cast<double>(b.top + b.bottom);
  };
  auto sign = [](double x) { return static_cast<double>((x > 0) - (x < 0)); };

  double concordance = 0.0, measurable_u = 0.0, measurable_v = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const double su = sign(midrank(u, ids[j]) - midrank(u, ids[i]));
      const double sv = sign(midrank(v, ids[j]) - midrank(v, ids[i]));
      concordance += su * sv;
      measurable_u += su * su;
      measurable_v += sv * sv;
    }
  }
  if (measurable_u == 0.0 || measurable_v == 0.0)
    throw UndefinedCorrelation("tau_b is undefined when a ranking is fully tied");
  return concordance / (std::sqrt(measurable_u) * std::sqrt(measurable_v));
}

RboScores bare_rbo_reference(const Ranking& a, const Ranking& b, double p) {
  validate({p, Variant::base});
  if (a.has_ties() || b.has_ties()) throw HasTies();
  const Ranking& S = a.size() > b.size() ? b : a;
  const Ranking& L = a.size() > b.size() ? a : b;
  const std::vector<std::string> s(S.items().begin(), S.items().end());
  const std::vector<std::string> l(L.items().begin(), L.items().end());
  const std::size_t x_l = strict_overlap(s, l, l.size());
  const std::size_t f = l.size() + s.size() - x_l;
  const std::size_t depth = depth_for_tail(p, f);
  const double scale = (1.0 - p) / p;
  const double tail = std::pow(p, static_cast<double>(depth + 1)) / (1.0 - p);

  RboScores out;
  {
    // Everything unseen is new and distinct.
    std::vector<std::string> s_ext = s;
    std::vector<std::string> l_ext = l;
    for (std::size_t k = s_ext.size(); k < depth; ++k) s_ext.push_back("\x01s" + std::to_string(k));
    for (std::size_t k = l_ext.size(); k < depth; ++k) l_ext.push_back("\x01l" + std::to_string(k));
    std::size_t x = 0;
    const double sum = truncated_bare_sum(s_ext, l_ext, p, depth, x);
    out.min = scale * (sum + static_cast<double>(x) * tail / static_cast<double>(depth + 1));
  }
  {
    // S continues with L's unmatched items, L with S's, then both share
    // identical fresh items.
    std::set<std::string> in_s(s.begin(), s.end()), in_l(l.begin(), l.end());
    std::vector<std::string> s_ext = s;
    std::vector<std::string> l_ext = l;
    for (const auto& id : l)
      if (!in_s.count(id)) s_ext.push_back(id);
    for (const auto& id : s)
      if (!in_l.count(id)) l_ext.push_back(id);
    for (std::size_t k = s_ext.size(); k < depth; ++k) s_ext.push_back("\x01c" + std::to_string(k));
    for (std::size_t k = l_ext.size(); k < depth; ++k) l_ext.push_back("\x01c" + std::to_string(k));
    std::size_t x = 0;
    const double sum = truncated_bare_sum(s_ext, l_ext, p, depth, x);
    out.max = scale * (sum + tail);
  }
  out.ext = bare_ext(s, l, p);
  out.res = out.max - out.min;
  return out;
}

double mean_bare_ext_over_permutations(const Ranking& a, const Ranking& b, double p, std::uint64_t cap) {
  validate({p, Variant::base});
  const bool a_shorter = a.size() <= b.size();
  const auto pa = enumerate_tie_permutations(a_shorter ? a : b, cap);
  const auto pb = enumerate_tie_permutations(a_shorter ? b : a, cap);
  std::vector<std::vector<std::string>> longer;
  for (const auto& y : pb) longer.push_back(flat(y));
  double total = 0.0;
  for (const auto& x : pa) {
    const auto shorter = flat(x);
    for (const auto& y : longer) total += bare_ext(shorter, y, p);
  }
  return total / static_cast<double>(pa.size() * pb.size());
}

}  // namespace rbokit::oracle
