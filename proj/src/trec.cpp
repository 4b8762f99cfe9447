#include "rbokit/trec.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "rbokit/error.hpp"
#include "rbokit/prefix.hpp"
#include "rbokit/random.hpp"

namespace rbokit {

const TrecTopic* TrecRun::find(std::string_view topic) const {
  for (const auto& t : topics)
    if (t.id == topic) return &t;
  return nullptr;
}

TrecRun parse_run(std::istream& in) {
  TrecRun run;
  std::unordered_map<std::string, std::size_t> topic_index;
  std::vector<std::unordered_set<std::string>> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> cols;
    for (std::string col; fields >> col;) cols.push_back(std::move(col));
    if (cols.empty()) continue;
    if (cols.size() != 6) throw MalformedLine(line_no, fmt::format("expected 6 columns, found {}", cols.size()));

    TrecEntry entry;
    entry.doc = cols[2];
    const std::string& rank = cols[3];
    auto [rp, rerr] = std::from_chars(rank.data(), rank.data() + rank.size(), entry.rank);
    if (rerr != std::errc() || rp != rank.data() + rank.size())
      throw MalformedLine(line_no, "rank '" + rank + "' is not an integer");
    const std::string& score = cols[4];
    auto [sp, serr] = std::from_chars(score.data(), score.data() + score.size(), entry.score);
    if (serr != std::errc() || sp != score.data() + score.size())
      throw MalformedLine(line_no, "score '" + score + "' is not a number");

    if (run.topics.empty()) run.tag = cols[5];
    auto [it, fresh] = topic_index.try_emplace(cols[0], run.topics.size());
    if (fresh) {
      run.topics.push_back({cols[0], {}});
      docs.emplace_back();
    }
    if (!docs[it->second].insert(entry.doc).second) throw DuplicateDoc(cols[0], entry.doc);
    run.topics[it->second].entries.push_back(std::move(entry));
  }
  if (run.topics.empty()) throw EmptyRun();
  for (auto& t : run.topics)
    std::stable_sort(t.entries.begin(), t.entries.end(),
                     [](const TrecEntry& a, const TrecEntry& b) { return a.score > b.score; });
  return run;
}

TrecRun parse_run(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_run(in);
}

TrecRun read_run(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  return parse_run(in);
}

std::string serialize_run(const TrecRun& run) {
  std::string out;
  for (const auto& t : run.topics)
    for (const auto& e : t.entries) out += fmt::format("{} Q0 {} {} {} {}\n", t.id, e.doc, e.rank, e.score, run.tag);
  return out;
}

Ranking to_ranking(const TrecTopic& topic) {
  std::vector<std::vector<std::string>> groups;
  for (std::size_t i = 0; i < topic.entries.size(); ++i) {
    if (i == 0 || topic.entries[i].score != topic.entries[i - 1].score) groups.emplace_back();
    groups.back().push_back(topic.entries[i].doc);
  }
  return Ranking(groups);
}

Ranking to_ranking(const TrecRun& run, std::string_view topic) {
  const TrecTopic* t = run.find(topic);
  if (!t) throw UnknownTopic(std::string(topic));
  return to_ranking(*t);
}

Ranking break_ties(const Ranking& r, const TieBreak& strategy) {
  SplitMix64 rng(strategy.seed);
  std::vector<std::string> order;
  order.reserve(r.size());
  for (std::size_t g = 0; g < r.group_count(); ++g) {
    std::vector<std::string> group(r.group(g).begin(), r.group(g).end());
    if (group.size() > 1) {
      if (strategy.kind == TieBreak::Kind::docid)
        std::sort(group.begin(), group.end());
      else
        rng.shuffle(group);
    }
    order.insert(order.end(), std::make_move_iterator(group.begin()), std::make_move_iterator(group.end()));
  }
  return untied_ranking(order);
}

TieStats tie_stats(std::span<const TrecRun> runs) {
  std::size_t tied_runs = 0, rankings = 0, tied_rankings = 0, docs = 0, tied_docs = 0, groups = 0;
  for (const auto& run : runs) {
    bool run_tied = false;
    for (const auto& topic : run.topics) {
      const Ranking r = to_ranking(topic);
      ++rankings;
      docs += r.size();
      if (!r.has_ties()) continue;
      run_tied = true;
      ++tied_rankings;
      for (std::size_t g = 0; g < r.group_count(); ++g) {
        if (r.group(g).size() < 2) continue;
        ++groups;
        tied_docs += r.group(g).size();
      }
    }
    tied_runs += run_tied;
  }
  TieStats out;
  auto share = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  out.runs_with_ties = share(tied_runs, runs.size());
  out.rankings_with_ties = share(tied_rankings, rankings);
  out.docs_tied = share(tied_docs, docs);
  out.avg_group_size_defined = groups > 0;
  out.avg_group_size = share(tied_docs, groups);
  return out;
}

double tie_impact(const Ranking& r, double p) {
  validate({p, Variant::a});
  double tied = 0.0, total = 0.0, weight = 1.0;
  for (Depth d = 1; d <= r.size(); ++d) {
    weight *= p;
    total += weight;
    if (r.group_bounds(r.group_at(d)).size() > 1) tied += weight;
  }
  return tied / total;
}

}  // namespace rbokit
