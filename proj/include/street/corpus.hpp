#ifndef STREET_CORPUS_HPP_
#define STREET_CORPUS_HPP_

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "street/codec.hpp"
#include "street/graph.hpp"
#include "street/result.hpp"
#include "street/task.hpp"

namespace street {

struct CorpusRecord {
  std::string id;
  Task task = Task::kArc;
  QaComponents components;
  ReasoningGraph gold;
  std::optional<std::string> predicted_proof;
};

struct LineError {
  std::size_t line = 0;  // 1-based
  Error error;
};

struct IngestResult {
  std::vector<CorpusRecord> records;
  std::vector<LineError> errors;
};

// Question components recovered from the premise nodes of a graph.
inline QaComponents ComponentsOf(const ReasoningGraph& graph) {
  QaComponents out;
  for (NodeId id : graph.PremiseIds()) {
    const Node& node = graph.node(id);
    switch (node.kind) {
      case NodeKind::kContext: out.context.push_back(node.text); break;
      case NodeKind::kQuestion: out.question.push_back(node.text); break;
      case NodeKind::kOption: {
        const std::size_t k = static_cast<std::size_t>(node.option_letter - 'A');
        if (out.options.size() <= k) out.options.resize(k + 1);
        out.options[k].push_back(node.text);
        break;
      }
      default: break;
    }
  }
  if (auto answer = ExtractAnswer(graph); answer.ok()) out.answer = *answer;
  return out;
}

inline Result<CorpusRecord> ParseRecord(std::string_view line) {
  auto schema = [](std::string message) {
    return MakeError(ErrorCode::kSchemaError, std::move(message));
  };
  const auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return schema("not a JSON object");
  for (const char* key : {"id", "task", "question", "proof"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      return schema(std::string("missing string field \"") + key + "\"");
    }
  }
  const auto task = ParseTask(j["task"].get<std::string>());
  if (!task) return schema("unknown task \"" + j["task"].get<std::string>() + "\"");
  CorpusRecord record;
  record.id = j["id"].get<std::string>();
  record.task = *task;
  auto gold = Parse(LinearizedExample{j["question"].get<std::string>(),
                                      j["proof"].get<std::string>(), *task});
  if (!gold.ok()) return schema(gold.error().ToString());
  record.gold = std::move(gold).value();
  record.components = ComponentsOf(record.gold);
  if (j.contains("predicted_proof")) {
    if (!j["predicted_proof"].is_string()) return schema("predicted_proof is not a string");
    record.predicted_proof = j["predicted_proof"].get<std::string>();
  }
  return record;
}

// Reads one record per line. Bad lines are collected with their line numbers
// and skipped; blank lines are ignored.
inline IngestResult IngestStream(std::istream& in) {
  IngestResult out;
  std::set<std::string> ids;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    auto record = ParseRecord(line);
    if (!record.ok()) {
      out.errors.push_back({number, record.error()});
      continue;
    }
    if (!ids.insert(record->id).second) {
      out.errors.push_back(
          {number, MakeError(ErrorCode::kSchemaError, "duplicate id \"" + record->id + "\"")});
      continue;
    }
    out.records.push_back(std::move(record).value());
  }
  return out;
}

inline Result<IngestResult> Ingest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeError(ErrorCode::kFileUnreadable, path);
  return IngestStream(in);
}

inline nlohmann::json ToJson(const CorpusRecord& record) {
  const LinearizedExample ex = Serialize(record.gold);
  nlohmann::json j = {{"id", record.id},
                      {"task", std::string(TaskName(record.task))},
                      {"question", ex.question_block},
                      {"proof", ex.proof_block}};
  if (record.predicted_proof) j["predicted_proof"] = *record.predicted_proof;
  return j;
}

// One canonical line, without the trailing newline.
inline std::string WriteRecord(const CorpusRecord& record) { return ToJson(record).dump(); }

inline constexpr int kStepHistogramCap = 15;
inline constexpr int kInDegreeHistogramCap = 8;

struct TaskStats {
  std::string task;
  std::size_t questions = 0;
  std::size_t steps = 0;
  // Last bucket collects everything at or above the cap.
  std::map<int, std::size_t> step_histogram;
  std::map<int, std::size_t> in_degree_histogram;
  double mean_steps = 0.0;
  double fraction_over_10_steps = 0.0;
  double fraction_in_degree_2_plus = 0.0;
};

struct DatasetStats {
  std::vector<TaskStats> tasks;  // fixed task order, empty tasks omitted
  TaskStats overall;
};

namespace corpus_internal {

struct Tally {
  std::size_t questions = 0, steps = 0, over_10 = 0, multi_premise = 0;
  std::map<int, std::size_t> step_histogram, in_degree_histogram;

  void Add(const ReasoningGraph& graph) {
    const int count = static_cast<int>(graph.StepCount());
    ++questions;
    steps += static_cast<std::size_t>(count);
    over_10 += count > 10 ? 1 : 0;
    ++step_histogram[std::min(count, kStepHistogramCap)];
    for (NodeId id : graph.StepIds()) {
      const int degree = static_cast<int>(graph.Premises(id).size());
      multi_premise += degree >= 2 ? 1 : 0;
      ++in_degree_histogram[std::min(degree, kInDegreeHistogramCap)];
    }
  }

  TaskStats Finish(std::string name) const {
    TaskStats out;
    out.task = std::move(name);
    out.questions = questions;
    out.steps = steps;
    out.step_histogram = step_histogram;
    out.in_degree_histogram = in_degree_histogram;
    if (questions) {
      out.mean_steps = static_cast<double>(steps) / static_cast<double>(questions);
      out.fraction_over_10_steps =
          static_cast<double>(over_10) / static_cast<double>(questions);
    }
    if (steps) {
      out.fraction_in_degree_2_plus =
          static_cast<double>(multi_premise) / static_cast<double>(steps);
    }
    return out;
  }
};

}  // namespace corpus_internal

// Step counts include the answer step.
inline DatasetStats Stats(const std::vector<CorpusRecord>& records) {
  std::map<Task, corpus_internal::Tally> by_task;
  corpus_internal::Tally all;
  for (const auto& record : records) {
    by_task[record.task].Add(record.gold);
    all.Add(record.gold);
  }
  DatasetStats out;
  for (Task task : kAllTasks) {
    if (auto it = by_task.find(task); it != by_task.end()) {
      out.tasks.push_back(it->second.Finish(std::string(TaskName(task))));
    }
  }
  out.overall = all.Finish("all");
  return out;
}

inline nlohmann::json ToJson(const TaskStats& stats) {
  // Dense arrays indexed by bucket; the last entry is the capped bucket.
  auto histogram = [](const std::map<int, std::size_t>& h, int cap) {
    std::vector<std::size_t> out(static_cast<std::size_t>(cap) + 1, 0);
    for (const auto& [k, v] : h) out[static_cast<std::size_t>(k)] = v;
    return nlohmann::json(out);
  };
  return {{"task", stats.task},
          {"questions", stats.questions},
          {"steps", stats.steps},
          {"mean_steps", stats.mean_steps},
          {"fraction_over_10_steps", stats.fraction_over_10_steps},
          {"fraction_in_degree_2_plus", stats.fraction_in_degree_2_plus},
          {"step_histogram", histogram(stats.step_histogram, kStepHistogramCap)},
          {"in_degree_histogram", histogram(stats.in_degree_histogram, kInDegreeHistogramCap)}};
}

inline nlohmann::json ToJson(const DatasetStats& stats) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& t : stats.tasks) tasks.push_back(ToJson(t));
  return {{"tasks", tasks}, {"overall", ToJson(stats.overall)}};
}

// counts[i][c]: raters that put item i in category c. Every item must have the
// same number of raters.
struct KappaInput {
  std::vector<std::vector<int>> counts;
};

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // P̄
  double expected = 0.0;  // P̄e
  bool degenerate = false;  // P̄e = 1; kappa reported as 1
};

inline Result<KappaResult> FleissKappa(const KappaInput& input) {
  if (input.counts.empty()) return MakeError(ErrorCode::kSchemaError, "no items");
  const std::size_t categories = input.counts.front().size();
  long raters = 0;
  for (int c : input.counts.front()) raters += c;
  if (raters < 2) {
    return MakeError(ErrorCode::kInsufficientRaters, std::to_string(raters) + " raters");
  }
  std::vector<double> totals(categories, 0.0);
  double observed = 0.0;
  for (std::size_t i = 0; i < input.counts.size(); ++i) {
    const auto& row = input.counts[i];
    long sum = 0;
    double agree = 0.0;
    if (row.size() != categories) {
      return MakeError(ErrorCode::kSchemaError, "item " + std::to_string(i) + " category count");
    }
    for (std::size_t c = 0; c < categories; ++c) {
      if (row[c] < 0) return MakeError(ErrorCode::kSchemaError, "negative count");
      sum += row[c];
      totals[c] += row[c];
      agree += static_cast<double>(row[c]) * (row[c] - 1);
    }
    if (sum != raters) {
      return MakeError(ErrorCode::kSchemaError,
                       "item " + std::to_string(i) + " has " + std::to_string(sum) + " ratings");
    }
    observed += agree / (static_cast<double>(raters) * (raters - 1));
  }
  const double items = static_cast<double>(input.counts.size());
  observed /= items;
  double expected = 0.0;
  for (double t : totals) {
    const double p = t / (items * static_cast<double>(raters));
    expected += p * p;
  }
  KappaResult out;
  out.observed = observed;
  out.expected = expected;
  if (expected >= 1.0 - 1e-12) {
    out.kappa = 1.0;
    out.degenerate = true;
  } else {
    out.kappa = (observed - expected) / (1.0 - expected);
  }
  return out;
}

}  // namespace street

#endif  // STREET_CORPUS_HPP_
