#include "rbokit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "rbokit/random.hpp"

namespace rbokit {

DiffBucket classify(double abs_diff) noexcept {
  if (abs_diff <= 0.01) return DiffBucket::small;
  if (abs_diff <= 0.1) return DiffBucket::medium;
  return DiffBucket::large;
}

std::string csv_number(double x) { return fmt::format("{:.12g}", x); }

PairRecord score_pair(const Ranking& first, const Ranking& second, std::span<const double> ps,
                      std::uint64_t tie_seed) {
  PairRecord rec;
  rec.length_first = first.size();
  rec.length_second = second.size();
  rec.has_ties = first.has_ties() || second.has_ties();
  auto tied_share = [](const Ranking& r) {
    std::size_t n = 0;
    for (std::size_t g = 0; g < r.group_count(); ++g)
      if (r.group(g).size() > 1) n += r.group(g).size();
    return static_cast<double>(n) / static_cast<double>(r.size());
  };
  rec.tied_first = tied_share(first);
  rec.tied_second = tied_share(second);

  const Ranking random_first = break_ties(first, TieBreak::at_random(derive_seed(tie_seed, 0)));
  const Ranking random_second = break_ties(second, TieBreak::at_random(derive_seed(tie_seed, 1)));
  const Ranking docid_first = break_ties(first, TieBreak::by_docid());
  const Ranking docid_second = break_ties(second, TieBreak::by_docid());
  const RboEvaluator bare_random(random_first, random_second, Variant::base);
  const RboEvaluator bare_docid(docid_first, docid_second, Variant::base);
  const RboEvaluator w(first, second, Variant::w);
  const RboEvaluator a(first, second, Variant::a);
  const RboEvaluator b(first, second, Variant::b);

  for (double p : ps) {
    PairResult r;
    r.p = p;
    r.bare_random = bare_random.scores(p).ext;
    r.bare_docid = bare_docid.scores(p).ext;
    r.w = w.scores(p);
    r.a = a.scores(p);
    r.b = b.scores(p);
    rec.results.push_back(r);
    rec.impact_first.push_back(tie_impact(first, p));
    rec.impact_second.push_back(tie_impact(second, p));
  }
  return rec;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("RBO_KIT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentOutput run_synth_experiment(const SynthConfig& cfg, std::span<const double> ps, std::size_t threads) {
  validate(cfg);
  ExperimentOutput out;
  out.key_header = {"pair", "target_tau", "realized_tau", "target_tied_first", "target_tied_second"};
  out.ps.assign(ps.begin(), ps.end());
  out.records.resize(cfg.pair_count);
  parallel_for(cfg.pair_count, threads, [&](std::size_t i) {
    const SynthPair pair = generate_pair(cfg, i);
    PairRecord rec = score_pair(pair.first, pair.second, ps, derive_seed(cfg.seed ^ 0x7469656272656b73ULL, i));
    rec.key = {std::to_string(i), csv_number(pair.meta.target_tau), csv_number(pair.meta.realized_tau),
               csv_number(pair.meta.target_ties_first), csv_number(pair.meta.target_ties_second)};
    out.records[i] = std::move(rec);
  });
  return out;
}

ExperimentOutput run_trec_experiment(std::span<const NamedRun> runs,
                                     std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                     std::span<const double> ps, std::uint64_t seed, std::size_t threads) {
  struct Job {
    std::size_t first, second;
    const TrecTopic* a;
    const TrecTopic* b;
  };
  std::vector<Job> jobs;
  for (const auto& [i, j] : pairs)
    for (const auto& topic : runs[i].run.topics)
      if (const TrecTopic* other = runs[j].run.find(topic.id)) jobs.push_back({i, j, &topic, other});

  ExperimentOutput out;
  out.key_header = {"run_first", "run_second", "topic"};
  out.ps.assign(ps.begin(), ps.end());
  out.records.resize(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    PairRecord rec = score_pair(to_ranking(*job.a), to_ranking(*job.b), ps, derive_seed(seed, k));
    rec.key = {runs[job.first].name, runs[job.second].name, job.a->id};
    out.records[k] = std::move(rec);
  });
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_by_tag_prefix(std::span<const NamedRun> runs,
                                                                     std::size_t prefix_len) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j)
      if (runs[i].run.tag.substr(0, prefix_len) == runs[j].run.tag.substr(0, prefix_len)) out.emplace_back(i, j);
  return out;
}

std::vector<SummaryRow> summarize(const ExperimentOutput& out) {
  std::vector<SummaryRow> rows;
  for (const char* baseline : {"random", "docid"}) {
    const bool random = baseline[0] == 'r';
    for (std::size_t k = 0; k < out.ps.size(); ++k) {
      SummaryRow row;
      row.baseline = baseline;
      row.p = out.ps[k];
      auto add = [](VariantSummary& s, double diff) {
        s.avg += diff;
        s.max = std::max(s.max, diff);
        const DiffBucket bucket = classify(diff);
        s.medium += bucket == DiffBucket::medium;
        s.large += bucket == DiffBucket::large;
      };
      for (const auto& rec : out.records) {
        if (!rec.has_ties) continue;
        const PairResult& r = rec.results[k];
        const double bare = random ? r.bare_random : r.bare_docid;
        ++row.pairs;
        add(row.w, std::abs(bare - r.w.ext));
        add(row.a, std::abs(bare - r.a.ext));
        add(row.b, std::abs(bare - r.b.ext));
      }
      if (row.pairs > 0) {
        const auto n = static_cast<double>(row.pairs);
        for (VariantSummary* s : {&row.w, &row.a, &row.b}) {
          s->avg /= n;
          s->medium /= n;
          s->large /= n;
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_pairs_csv(std::ostream& os, const ExperimentOutput& out) {
  for (const auto& h : out.key_header) os << h << ',';
  os << "p,length_first,length_second,tied_first,tied_second,impact_first,impact_second,"
        "bare_random,bare_docid";
  for (const char* v : {"w", "a", "b"}) os << fmt::format(",{0}_ext,{0}_min,{0}_max,{0}_res", v);
  os << '\n';
  for (const auto& rec : out.records) {
    for (std::size_t k = 0; k < rec.results.size(); ++k) {
      const PairResult& r = rec.results[k];
      std::string line;
      for (const auto& key : rec.key) line += key + ',';
      line += fmt::format("{},{},{},{},{},{},{},{},{}", csv_number(r.p), rec.length_first, rec.length_second,
                          csv_number(rec.tied_first), csv_number(rec.tied_second), csv_number(rec.impact_first[k]),
                          csv_number(rec.impact_second[k]), csv_number(r.bare_random), csv_number(r.bare_docid));
      for (const RboScores* s : {&r.w, &r.a, &r.b})
        line += fmt::format(",{},{},{},{}", csv_number(s->ext), csv_number(s->min), csv_number(s->max),
                            csv_number(s->res));
      os << line << '\n';
    }
  }
}

void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows) {
  os << "baseline,p,pairs";
  for (const char* v : {"w", "a", "b"}) os << fmt::format(",{0}_avg,{0}_max,{0}_medium,{0}_large", v);
  os << '\n';
  for (const auto& row : rows) {
    std::string line = fmt::format("{},{},{}", row.baseline, csv_number(row.p), row.pairs);
    for (const VariantSummary* s : {&row.w, &row.a, &row.b})
      line += fmt::format(",{},{},{},{}", csv_number(s->avg), csv_number(s->max), csv_number(s->medium),
                          csv_number(s->large));
    os << line << '\n';
  }
}

}  // namespace rbokit
