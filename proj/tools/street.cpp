// street: command-line front end for the reasoning-graph toolkit.
//
//   street tlu        split text lines into textual logical units
//   street validate   check a record file, one diagnostic per bad line
//   street score      score predicted proofs against gold graphs
//   street stats      step-count and in-degree statistics
//   street scone-gen  generate synthetic SCONE records

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "street/street.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitEnvironment = 2;

struct RunConfig {
  std::string in = "-";
  std::optional<std::string> text;
  std::string out;
  std::string report;
  std::string task;
  std::string scorer_cmd;
  double scorer_threshold = street::kDefaultSoftThreshold;
  int ged_exact_bound = street::kDefaultExactBound;
  int jobs = 1;
  std::uint64_t seed = 0;
  int n = 10;
  int steps = 5;
};

class Output {
 public:
  // Empty path or "-" writes to stdout.
  bool Open(const std::string& path) {
    if (path.empty() || path == "-") return true;
    file_.open(path, std::ios::binary | std::ios::trunc);
    return file_.is_open();
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool Close() {
    if (!file_.is_open()) return std::cout.good();
    file_.close();
    return !file_.fail();
  }

 private:
  std::ofstream file_;
};

street::Result<street::IngestResult> ReadRecords(const std::string& path) {
  if (path == "-") return street::IngestStream(std::cin);
  return street::Ingest(path);
}

void ReportLineErrors(const street::IngestResult& ingest) {
  for (const auto& e : ingest.errors) {
    std::cerr << "line " << e.line << ": " << e.error.ToString() << "\n";
  }
}

std::vector<street::CorpusRecord> FilterTask(std::vector<street::CorpusRecord> records,
                                             const std::string& task) {
  if (task.empty()) return records;
  std::vector<street::CorpusRecord> out;
  const auto parsed = street::ParseTask(task);
  for (auto& r : records) {
    const bool match = parsed ? r.task == *parsed : street::TaskGroupName(r.task) == task;
    if (match) out.push_back(std::move(r));
  }
  return out;
}

int CmdTlu(const RunConfig& config) {
  std::vector<std::string> inputs;
  if (config.text) {
    inputs.push_back(*config.text);
  } else {
    std::ifstream file;
    if (config.in != "-") {
      file.open(config.in, std::ios::binary);
      if (!file) {
        std::cerr << "cannot read " << config.in << "\n";
        return kExitEnvironment;
      }
    }
    std::istream& in = config.in == "-" ? std::cin : file;
    std::string line;
    while (std::getline(in, line)) {
      if (!street::Trim(line).empty()) inputs.push_back(line);
    }
  }
  Output out;
  if (!out.Open(config.out)) {
    std::cerr << "cannot write " << config.out << "\n";
    return kExitEnvironment;
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) out.stream() << "\n";
    const auto tlus = street::SegmentTlus(inputs[i]);
    for (std::size_t k = 0; k < tlus.size(); ++k) {
      out.stream() << "(" << k + 1 << ") " << tlus[k] << "\n";
    }
  }
  return out.Close() ? kExitOk : kExitEnvironment;
}

int CmdValidate(const RunConfig& config) {
  auto ingest = ReadRecords(config.in);
  if (!ingest.ok()) {
    std::cerr << ingest.error().ToString() << "\n";
    return kExitEnvironment;
  }
  for (const auto& e : ingest->errors) {
    std::cout << "line " << e.line << ": " << e.error.ToString() << "\n";
  }
  std::cout << ingest->records.size() << " valid, " << ingest->errors.size() << " invalid\n";
  return ingest->errors.empty() ? kExitOk : kExitFindings;
}

std::string DefaultReportPath(const std::string& out) {
  if (out.empty() || out == "-") return "street-report.json";
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? out.substr(0, dot) : out) + ".report.json";
}

int CmdScore(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  auto ingest = ReadRecords(config.in);
  if (!ingest.ok()) {
    std::cerr << ingest.error().ToString() << "\n";
    return kExitEnvironment;
  }
  ReportLineErrors(*ingest);
  const auto records = FilterTask(std::move(ingest->records), config.task);

  street::ScoringOptions options;
  options.jobs = config.jobs;
  options.ged.exact_bound = config.ged_exact_bound;
  options.soft_threshold = config.scorer_threshold;
  if (!config.scorer_cmd.empty()) {
    options.soft_scorer = std::make_shared<street::ExternalScorer>(config.scorer_cmd);
  }
  const street::ScoringRun run = street::ScoreRecords(records, options);

  Output scores;
  if (!scores.Open(config.out)) {
    std::cerr << "cannot write " << config.out << "\n";
    return kExitEnvironment;
  }
  for (const auto& s : run.scores) scores.stream() << street::ToJson(s).dump() << "\n";
  if (!scores.Close()) return kExitEnvironment;

  const std::string report_path =
      config.report.empty() ? DefaultReportPath(config.out) : config.report;
  std::ofstream report(report_path, std::ios::binary | std::ios::trunc);
  report << street::ToJson(run.report).dump(2) << "\n";
  report.close();
  if (report.fail()) {
    std::cerr << "cannot write " << report_path << "\n";
    return kExitEnvironment;
  }
  // With scores on stdout the table goes to stderr to keep stdout parseable.
  std::ostream& table = (config.out.empty() || config.out == "-") ? std::cerr : std::cout;
  table << street::FormatTable(run.report);

  for (const auto& id : run.skipped_ids) std::cerr << id << ": no predicted_proof\n";
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "scored " << run.scores.size() << " in " << seconds << " s with "
            << config.jobs << " job(s)\n";
  const bool findings = !ingest->errors.empty() || !run.skipped_ids.empty();
  return findings ? kExitFindings : kExitOk;
}

int CmdStats(const RunConfig& config) {
  auto ingest = ReadRecords(config.in);
  if (!ingest.ok()) {
    std::cerr << ingest.error().ToString() << "\n";
    return kExitEnvironment;
  }
  ReportLineErrors(*ingest);
  const auto stats = street::Stats(FilterTask(std::move(ingest->records), config.task));
  Output out;
  if (!out.Open(config.out)) {
    std::cerr << "cannot write " << config.out << "\n";
    return kExitEnvironment;
  }
  out.stream() << street::ToJson(stats).dump(2) << "\n";
  if (!out.Close()) return kExitEnvironment;
  return ingest->errors.empty() ? kExitOk : kExitFindings;
}

int CmdSconeGen(const RunConfig& config) {
  const auto task = street::ParseTask(config.task);
  if (!task || !street::IsScone(*task)) {
    std::cerr << "--task must be alchemy, scene or tangrams\n";
    return kExitEnvironment;
  }
  Output out;
  if (!out.Open(config.out)) {
    std::cerr << "cannot write " << config.out << "\n";
    return kExitEnvironment;
  }
  const std::string prefix(street::TaskName(*task));
  for (int i = 0; i < config.n; ++i) {
    const std::uint64_t seed = config.seed * 1000003ULL + static_cast<std::uint64_t>(i);
    auto generated = street::Generate(seed, *task, config.steps);
    street::CorpusRecord record;
    record.id = prefix + "-" + std::to_string(config.seed) + "-" + std::to_string(i);
    record.task = *task;
    record.gold = std::move(generated.gold);
    out.stream() << street::WriteRecord(record) << "\n";
  }
  return out.Close() ? kExitOk : kExitEnvironment;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reasoning-graph toolkit: TLU extraction, validation, scoring, statistics"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_in = [&](CLI::App* cmd) {
    cmd->add_option("--in", config.in, "Input file ('-' for stdin)")->envname("STREET_IN");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", config.out, "Output file (default stdout)")->envname("STREET_OUT");
  };
  auto add_task = [&](CLI::App* cmd) {
    cmd->add_option("--task", config.task, "Task name or SCONE")->envname("STREET_TASK");
  };

  auto* tlu = app.add_subcommand("tlu", "Split text into TLUs, printed one per line as (k) text");
  add_in(tlu);
  add_out(tlu);
  tlu->add_option("--file", config.in, "Text file, one input per line")->excludes("--in");
  tlu->add_option("--text", config.text, "Text to split")->excludes("--file")->excludes("--in");

  auto* validate = app.add_subcommand("validate", "Validate a record file");
  add_in(validate);

  auto* score = app.add_subcommand("score", "Score predicted proofs against gold graphs");
  add_in(score);
  add_out(score);
  add_task(score);
  score->add_option("--report", config.report, "Report JSON path")->envname("STREET_REPORT");
  score->add_option("--scorer-cmd", config.scorer_cmd, "External soft-similarity command")
      ->envname("STREET_SCORER_CMD");
  score->add_option("--scorer-threshold", config.scorer_threshold, "Soft similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->envname("STREET_SCORER_THRESHOLD");
  score->add_option("--ged-exact-bound", config.ged_exact_bound,
                    "Largest per-side step count solved exactly")
      ->check(CLI::PositiveNumber)
      ->envname("STREET_GED_EXACT_BOUND");
  score->add_option("--jobs", config.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->envname("STREET_JOBS");

  auto* stats = app.add_subcommand("stats", "Dataset statistics as JSON");
  add_in(stats);
  add_out(stats);
  add_task(stats);

  auto* gen = app.add_subcommand("scone-gen", "Generate synthetic SCONE records");
  add_out(gen);
  gen->add_option("--task", config.task, "alchemy, scene or tangrams")
      ->required()
      ->envname("STREET_TASK");
  gen->add_option("--n", config.n, "Number of records")->check(CLI::NonNegativeNumber);
  gen->add_option("--steps", config.steps, "Actions per record")->check(CLI::PositiveNumber);
  gen->add_option("--seed", config.seed, "Random seed")->envname("STREET_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitEnvironment;
  }

  if (*tlu) return CmdTlu(config);
  if (*validate) return CmdValidate(config);
  if (*score) return CmdScore(config);
  if (*stats) return CmdStats(config);
  return CmdSconeGen(config);
}
