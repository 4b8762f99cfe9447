#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rbokit/agreement.hpp"
#include "rbokit/error.hpp"
#include "rbokit/experiment.hpp"
#include "rbokit/oracle.hpp"
#include "rbokit/prefix.hpp"
#include "rbokit/random.hpp"
#include "rbokit/trec.hpp"

namespace rbokit::cli {
namespace {

namespace fs = std::filesystem;

// Argument problems found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<double> ps;
  std::vector<std::string> variants;
  std::vector<std::string> tie_breaks;
  std::uint64_t seed = 1;
  std::string format = "plain";
  std::string topic;
  std::string out_dir;

  // compute / verify / stats
  std::vector<std::string> files;

  // experiment
  std::string mode = "synth";
  std::string pairs_file;
  std::size_t group_prefix_len = 0;
  bool group_prefix_set = false;
  SynthConfig synth;
  bool emit_rankings = false;

  // stats
  bool per_ranking = false;
};

const std::vector<double> kDefaultPs{0.8, 0.9, 0.95};

std::vector<double> persistence_values(const Options& o) {
  std::vector<double> ps = o.ps.empty() ? kDefaultPs : o.ps;
  for (double p : ps) validate(RboParams{p, Variant::a});
  return ps;
}

std::vector<Variant> variants(const Options& o) {
  if (o.variants.empty()) return {Variant::w, Variant::a, Variant::b};
  std::vector<Variant> out;
  for (const auto& name : o.variants) {
    const auto v = parse_variant(name);
    if (!v) throw UsageError("unknown variant '" + name + "'");
    out.push_back(*v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RankingPair {
  std::string topic;
  Ranking first;
  Ranking second;
};

// Two plain rankings, or the selected (or shared) topics of two runs.
std::vector<RankingPair> load_pairs(const Options& o) {
  if (o.files.size() != 2) throw UsageError("expected exactly two input files");
  if (o.format == "plain") {
    if (!o.topic.empty()) throw UsageError("--topic only applies to --format trec");
    return {{"", parse_plain_ranking(read_file(o.files[0])), parse_plain_ranking(read_file(o.files[1]))}};
  }
  const TrecRun a = parse_run(read_file(o.files[0]));
  const TrecRun b = parse_run(read_file(o.files[1]));
  std::vector<RankingPair> out;
  if (!o.topic.empty()) {
    out.push_back({o.topic, to_ranking(a, o.topic), to_ranking(b, o.topic)});
    return out;
  }
  for (const auto& t : a.topics)
    if (const TrecTopic* other = b.find(t.id)) out.push_back({t.id, to_ranking(t), to_ranking(*other)});
  if (out.empty()) throw UsageError("the two runs share no topic");
  return out;
}

int cmd_compute(const Options& o, std::ostream& out) {
  const auto ps = persistence_values(o);
  const auto vs = variants(o);
  for (const auto& t : o.tie_breaks)
    if (t != "random" && t != "docid") throw UsageError("unknown tie break '" + t + "'");
  const auto pairs = load_pairs(o);

  std::string header = "topic,p,variant,ext,min,max,res";
  for (const auto& t : o.tie_breaks) header += ",bare_" + t;
  std::string body;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const RankingPair& pair = pairs[k];
    std::vector<RboEvaluator> bare;
    for (const auto& t : o.tie_breaks) {
      const bool random = t == "random";
      const std::uint64_t seed = derive_seed(o.seed, k);
      bare.emplace_back(
          break_ties(pair.first, random ? TieBreak::at_random(derive_seed(seed, 0)) : TieBreak::by_docid()),
          break_ties(pair.second, random ? TieBreak::at_random(derive_seed(seed, 1)) : TieBreak::by_docid()),
          Variant::base);
    }
    for (Variant v : vs) {
      const RboEvaluator eval(pair.first, pair.second, v);
      for (double p : ps) {
        const RboScores s = eval.scores(p);
        body += fmt::format("{},{},{},{},{},{},{}", pair.topic, csv_number(p), to_string(v), csv_number(s.ext),
                            csv_number(s.min), csv_number(s.max), csv_number(s.res));
        for (const auto& b : bare) body += "," + csv_number(b.scores(p).ext);
        body += '\n';
      }
    }
  }
  out << header << '\n' << body;
  return kOk;
}

std::vector<std::pair<std::size_t, std::size_t>> read_pair_list(const std::string& path,
                                                                 const std::vector<NamedRun>& runs) {
  auto find = [&](const std::string& name) {
    for (std::size_t i = 0; i < runs.size(); ++i)
      if (runs[i].name == name) return i;
    throw UsageError("pair list names unknown run '" + name + "'");
  };
  std::istringstream in(read_file(path));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a) || a.front() == '#') continue;
    if (!(fields >> b)) throw UsageError("pair list line needs two run names: '" + line + "'");
    out.emplace_back(find(a), find(b));
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("cannot write " + path.string());
}

int cmd_experiment(const Options& o, std::ostream& out) {
  const auto ps = persistence_values(o);
  ExperimentOutput result;
  if (o.mode == "synth") {
    if (!o.files.empty()) throw UsageError("synth mode takes no input files");
    SynthConfig cfg = o.synth;
    cfg.seed = o.seed;
    try {
      validate(cfg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    result = run_synth_experiment(cfg, ps, worker_count());
    if (o.emit_rankings) {
      if (o.out_dir.empty()) throw UsageError("--emit-rankings needs --out");
      const fs::path dir = fs::path(o.out_dir) / "rankings";
      fs::create_directories(dir);
      for (std::size_t i = 0; i < cfg.pair_count; ++i) {
        const SynthPair pair = generate_pair(cfg, i);
        write_file(dir / fmt::format("pair{:06}_first.txt", i), format_plain_ranking(pair.first));
        write_file(dir / fmt::format("pair{:06}_second.txt", i), format_plain_ranking(pair.second));
      }
    }
  } else if (o.mode == "trec") {
    if (o.files.size() < 2) throw UsageError("trec mode needs at least two run files");
    if (o.pairs_file.empty() == !o.group_prefix_set)
      throw UsageError("trec mode needs exactly one of --pairs or --group-prefix-len");
    std::vector<NamedRun> runs;
    for (const auto& f : o.files) runs.push_back({fs::path(f).filename().string(), parse_run(read_file(f))});
    const auto pairs =
        o.pairs_file.empty() ? pairs_by_tag_prefix(runs, o.group_prefix_len) : read_pair_list(o.pairs_file, runs);
    result = run_trec_experiment(runs, pairs, ps, o.seed, worker_count());
  } else {
    throw UsageError("unknown mode '" + o.mode + "'");
  }

  std::ostringstream pairs_csv, summary_csv;
  write_pairs_csv(pairs_csv, result);
  const auto rows = summarize(result);
  write_summary_csv(summary_csv, rows);
  if (o.out_dir.empty()) {
    out << summary_csv.str();
  } else {
    fs::create_directories(o.out_dir);
    write_file(fs::path(o.out_dir) / "pairs.csv", pairs_csv.str());
    write_file(fs::path(o.out_dir) / "summary.csv", summary_csv.str());
  }
  return kOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const auto ps = persistence_values(o);
  if (o.files.empty()) throw UsageError("expected at least one run file");
  std::vector<TrecRun> runs;
  for (const auto& f : o.files) runs.push_back(parse_run(read_file(f)));

  if (o.per_ranking) {
    std::string header = "run,topic,length,docs_tied";
    for (double p : ps) header += ",impact_" + csv_number(p);
    out << header << '\n';
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (const auto& topic : runs[i].topics) {
        const Ranking r = to_ranking(topic);
        std::size_t tied = 0;
        for (std::size_t g = 0; g < r.group_count(); ++g)
          if (r.group(g).size() > 1) tied += r.group(g).size();
        std::string line = fmt::format("{},{},{},{}", fs::path(o.files[i]).filename().string(), topic.id, r.size(),
                                       csv_number(static_cast<double>(tied) / static_cast<double>(r.size())));
        for (double p : ps) line += "," + csv_number(tie_impact(r, p));
        out << line << '\n';
      }
    }
    return kOk;
  }

  const TieStats s = tie_stats(runs);
  std::size_t rankings = 0;
  std::vector<double> impact(ps.size(), 0.0);
  for (const auto& run : runs)
    for (const auto& topic : run.topics) {
      const Ranking r = to_ranking(topic);
      ++rankings;
      for (std::size_t k = 0; k < ps.size(); ++k) impact[k] += tie_impact(r, ps[k]);
    }
  std::string header = "runs,rankings,runs_with_ties,rankings_with_ties,docs_tied,avg_group_size,avg_group_size_defined";
  for (double p : ps) header += ",mean_impact_" + csv_number(p);
  std::string line = fmt::format("{},{},{},{},{},{},{}", runs.size(), rankings, csv_number(s.runs_with_ties),
                                 csv_number(s.rankings_with_ties), csv_number(s.docs_tied),
                                 csv_number(s.avg_group_size), s.avg_group_size_defined ? 1 : 0);
  for (double x : impact) line += "," + csv_number(x / static_cast<double>(rankings));
  out << header << '\n' << line << '\n';
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  constexpr double kTolerance = 1e-9;
  const auto ps = persistence_values(o);
  const auto pairs = load_pairs(o);
  double worst = 0.0;
  for (const auto& pair : pairs) {
    const std::string label = pair.topic.empty() ? std::string("input") : "topic " + pair.topic;
    double numeric = 0.0;
    for (Variant v : {Variant::w, Variant::a, Variant::b}) {
      const RboEvaluator eval(pair.first, pair.second, v);
      for (double p : ps) {
        const RboScores s = eval.scores(p);
        for (Assumption a : {Assumption::min, Assumption::max, Assumption::ext}) {
          const double fast = a == Assumption::min ? s.min : a == Assumption::max ? s.max : s.ext;
          numeric = std::max(numeric, std::abs(fast - oracle::rbo_numeric(pair.first, pair.second, {p, v}, a)));
        }
      }
    }
    out << fmt::format("{}: numeric summation, max deviation {:.3e}\n", label, numeric);
    worst = std::max(worst, numeric);

    const std::size_t s = std::min(pair.first.size(), pair.second.size());
    try {
      double perm = 0.0;
      for (Depth d = 1; d <= s; ++d) {
        const Fraction enumerated = oracle::agreement_a_enumerated(pair.first, pair.second, d);
        const Fraction fast = agreement_exact(pair.first, pair.second, d, Variant::a);
        perm = std::max(perm, std::abs((fast - enumerated).to_double()));
      }
      out << fmt::format("{}: permutation average of the a-variant agreement, max deviation {:.3e}\n", label, perm);
      worst = std::max(worst, perm);
    } catch (const TooManyPermutations& e) {
      out << fmt::format("{}: permutation check skipped ({})\n", label, e.what());
    }
  }
  const bool pass = worst < kTolerance;
  out << fmt::format("max deviation {:.3e}: {}\n", worst, pass ? "PASS" : "FAIL");
  return pass ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tie-aware rank-biased overlap"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--p", o.ps, "Persistence value; repeatable (default 0.8 0.9 0.95)");
  };
  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"plain", "trec"}));
    cmd->add_option("--topic", o.topic, "Topic to compare (trec format; default: every shared topic)");
  };

  CLI::App* compute = app.add_subcommand("compute", "Score two rankings");
  compute->add_option("files", o.files, "Two ranking files")->required()->expected(2);
  add_common(compute);
  add_inputs(compute);
  compute->add_option("--variant", o.variants, "w, a, b or base; repeatable (default w a b)");
  compute->add_option("--tie-break", o.tie_breaks, "Add bare RBO with ties broken this way: random or docid");
  compute->add_option("--seed", o.seed, "Seed for random tie breaking");

  CLI::App* experiment = app.add_subcommand("experiment", "Compare bare RBO with the tie-aware variants");
  experiment->add_option("--mode", o.mode, "synth or trec")->check(CLI::IsMember({"synth", "trec"}));
  experiment->add_option("files", o.files, "Run files (trec mode)");
  add_common(experiment);
  experiment->add_option("--seed", o.seed, "Master seed");
  experiment->add_option("--out", o.out_dir, "Write pairs.csv and summary.csv here instead of the summary to stdout");
  experiment->add_option("--pairs", o.pairs_file, "File of run-name pairs to compare (trec mode)");
  experiment->add_option("--group-prefix-len", o.group_prefix_len, "Compare runs whose tags share this prefix")
      ->each([&](const std::string&) { o.group_prefix_set = true; });
  experiment->add_option("--count", o.synth.pair_count, "Synthetic pairs");
  experiment->add_option("--items", o.synth.n_items, "Items per synthetic ranking");
  experiment->add_option("--tau-min", o.synth.tau_min);
  experiment->add_option("--tau-max", o.synth.tau_max);
  experiment->add_option("--ties-min", o.synth.tie_min);
  experiment->add_option("--ties-max", o.synth.tie_max);
  experiment->add_option("--length-min", o.synth.length_min);
  experiment->add_option("--length-max", o.synth.length_max);
  experiment->add_flag("--shared-ties", o.synth.shared_ties, "Both rankings tie the same items");
  experiment->add_flag("--emit-rankings", o.emit_rankings, "Also write every synthetic pair under OUT/rankings");

  CLI::App* stats = app.add_subcommand("stats", "Tie statistics of TREC runs");
  stats->add_option("files", o.files, "Run files")->required();
  add_common(stats);
  stats->add_flag("--per-ranking", o.per_ranking, "One row per (run, topic)");

  CLI::App* verify = app.add_subcommand("verify", "Check the prefix engine against the reference implementations");
  verify->add_option("files", o.files, "Two ranking files")->required()->expected(2);
  add_common(verify);
  add_inputs(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*compute) return cmd_compute(o, out);
    if (*experiment) return cmd_experiment(o, out);
    if (*stats) return cmd_stats(o, out);
    return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InvalidPersistence& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const CrossingGroupAtDepth& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const UnknownTopic& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace rbokit::cli
