#ifndef STREET_METRICS_HPP_
#define STREET_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "street/codec.hpp"
#include "street/ged.hpp"
#include "street/graph.hpp"
#include "street/result.hpp"
#include "street/similarity.hpp"
#include "street/task.hpp"

namespace street {

inline Result<bool> AnswerAccuracy(const AnswerValue& pred, const AnswerValue& gold) {
  if (pred.index() != gold.index()) {
    return MakeError(ErrorCode::kTypeMismatch, ToString(pred) + " vs " + ToString(gold));
  }
  return pred == gold;
}

namespace metrics_internal {

inline std::set<NodeId> ViewPremises(const ComparisonView& view, NodeId id) {
  std::set<NodeId> out;
  for (const Edge& e : view.edges) {
    if (e.to == id) out.insert(e.from);
  }
  return out;
}

}  // namespace metrics_internal

// Greedy anchor-based alignment: pred steps in topological order, each matched
// to the first free gold step (ascending id) whose premise set equals the
// pred premise set translated through earlier matches and whose text passes σ.
inline std::map<NodeId, NodeId> AlignNodes(const ReasoningGraph& pred,
                                           const ReasoningGraph& gold,
                                           const SimilarityPolicy& sigma) {
  const ComparisonView pv = MakeComparisonView(pred);
  const ComparisonView gv = MakeComparisonView(gold);
  std::vector<NodeId> gold_steps = gv.steps;
  std::sort(gold_steps.begin(), gold_steps.end());
  std::map<NodeId, std::set<NodeId>> gold_premises;
  for (NodeId g : gold_steps) gold_premises[g] = metrics_internal::ViewPremises(gv, g);

  std::map<NodeId, NodeId> mapping;
  std::set<NodeId> taken;
  for (NodeId p : pv.steps) {
    std::set<NodeId> translated;
    bool translatable = true;
    for (NodeId x : metrics_internal::ViewPremises(pv, p)) {
      if (!pred.IsStep(x)) {
        translated.insert(x);
      } else if (auto it = mapping.find(x); it != mapping.end()) {
        translated.insert(it->second);
      } else {
        translatable = false;
        break;
      }
    }
    if (!translatable) continue;
    for (NodeId g : gold_steps) {
      if (taken.count(g) || gold_premises[g] != translated) continue;
      if (!sigma.Equivalent(pred.node(p).text, gold.node(g).text)) continue;
      mapping[p] = g;
      taken.insert(g);
      break;
    }
  }
  return mapping;
}

namespace metrics_internal {

inline bool IsBijectiveIsomorphism(const ReasoningGraph& pred, const ReasoningGraph& gold,
                                   const std::map<NodeId, NodeId>& alignment) {
  const ComparisonView pv = MakeComparisonView(pred);
  const ComparisonView gv = MakeComparisonView(gold);
  if (alignment.size() != pv.steps.size() || alignment.size() != gv.steps.size()) {
    return false;
  }
  if (pv.edges.size() != gv.edges.size()) return false;
  for (const Edge& e : pv.edges) {
    auto image = [&](NodeId id) {
      auto it = alignment.find(id);
      return it == alignment.end() ? id : it->second;
    };
    if (!gv.edges.count({image(e.from), image(e.to)})) return false;
  }
  return true;
}

}  // namespace metrics_internal

// Strict: right answer, alignment is a bijection over comparison steps, and
// every edge corresponds.
inline bool ReasoningGraphAccuracy(const ReasoningGraph& pred, const ReasoningGraph& gold,
                                   const SimilarityPolicy& sigma) {
  if (!AnswersAgree(pred, gold)) return false;
  return metrics_internal::IsBijectiveIsomorphism(pred, gold, AlignNodes(pred, gold, sigma));
}

// 1 - δ / max(|N_p|+|E_p|, |N_g|+|E_g|), and 0 for a wrong answer.
inline double SimilarityFromGed(const GedOutcome& ged) {
  if (ged.delta.is_infinite()) return 0.0;
  const auto denominator = std::max(ged.norm_terms.pred, ged.norm_terms.gold);
  if (denominator == 0) return ged.delta.value() == 0 ? 1.0 : 0.0;
  const double sim =
      1.0 - static_cast<double>(ged.delta.value()) / static_cast<double>(denominator);
  return std::clamp(sim, 0.0, 1.0);
}

inline double GraphSimilarity(const ReasoningGraph& pred, const ReasoningGraph& gold,
                              const SimilarityPolicy& sigma, const GedOptions& options = {}) {
  if (!AnswersAgree(pred, gold)) return 0.0;
  return SimilarityFromGed(ComputeGed(pred, gold, sigma, options));
}

struct QuestionScore {
  std::string id;
  Task task = Task::kArc;
  bool answer_correct = false;
  bool graph_accurate = false;
  double graph_similarity = 0.0;
  bool malformed = false;
  bool truncated = false;
  bool ged_exact = true;
  std::map<NodeId, NodeId> alignment;
  std::optional<std::string> error;
};

inline QuestionScore ScoreGraphs(const ReasoningGraph& pred, const ReasoningGraph& gold,
                                 const SimilarityPolicy& sigma, const GedOptions& options = {}) {
  QuestionScore score;
  score.task = gold.task();
  const auto gold_answer = ExtractAnswer(gold);
  const auto pred_answer = ExtractAnswer(pred);
  if (!pred_answer.ok()) score.error = pred_answer.error().ToString();
  if (gold_answer.ok() && pred_answer.ok()) {
    const auto correct = AnswerAccuracy(*pred_answer, *gold_answer);
    score.answer_correct = correct.ok() && *correct;
  }
  score.alignment = AlignNodes(pred, gold, sigma);
  if (!score.answer_correct) return score;
  score.graph_accurate = metrics_internal::IsBijectiveIsomorphism(pred, gold, score.alignment);
  if (score.graph_accurate) {
    score.graph_similarity = 1.0;
    return score;
  }
  const GedOutcome ged = ComputeGed(pred, gold, sigma, options);
  score.ged_exact = ged.exact;
  score.graph_similarity = SimilarityFromGed(ged);
  return score;
}

// Scores a raw model proof against the gold graph. Unparseable output is
// malformed and scores (false, false, 0).
inline QuestionScore ScoreQuestion(std::string_view raw_prediction, const ReasoningGraph& gold,
                                   const SimilarityPolicy& sigma,
                                   const GedOptions& options = {}) {
  auto parsed = ParseModelOutput(raw_prediction, gold);
  if (!parsed.ok()) {
    QuestionScore score;
    score.task = gold.task();
    score.malformed = true;
    score.error = parsed.error().ToString();
    return score;
  }
  QuestionScore score = ScoreGraphs(parsed->graph, gold, sigma, options);
  score.truncated = parsed->truncated;
  return score;
}

inline nlohmann::json ToJson(const QuestionScore& score) {
  nlohmann::json alignment = nlohmann::json::array();
  for (const auto& [p, g] : score.alignment) alignment.push_back({p.value(), g.value()});
  nlohmann::json out = {
      {"id", score.id},
      {"task", std::string(TaskName(score.task))},
      {"answer_correct", score.answer_correct},
      {"graph_accurate", score.graph_accurate},
      {"graph_similarity", score.graph_similarity},
      {"malformed", score.malformed},
      {"truncated", score.truncated},
      {"ged_exact", score.ged_exact},
      {"alignment", alignment},
  };
  if (score.error) out["error"] = *score.error;
  return out;
}

struct ReportRow {
  std::string task;
  std::size_t count = 0;
  std::size_t malformed = 0;
  std::size_t ged_exact = 0;
  double answer_accuracy = 0.0;
  double reasoning_graph_accuracy = 0.0;
  double graph_similarity = 0.0;
};

struct RunReport {
  std::vector<ReportRow> rows;
  std::string scorer;
  bool fallback_similarity = false;
  std::size_t total = 0;
};

// Per-task-group means in percent, rows in the fixed table order. Sums run in
// input order so the result does not depend on scheduling.
inline RunReport Aggregate(const std::vector<QuestionScore>& scores, std::string scorer = "") {
  struct Sums {
    std::size_t count = 0, malformed = 0, exact = 0;
    double answer = 0, graph = 0, sim = 0;
  };
  std::map<std::string, Sums> sums;
  for (const auto& s : scores) {
    auto& t = sums[std::string(TaskGroupName(s.task))];
    ++t.count;
    t.malformed += s.malformed ? 1 : 0;
    t.exact += s.ged_exact ? 1 : 0;
    t.answer += s.answer_correct ? 1.0 : 0.0;
    t.graph += s.graph_accurate ? 1.0 : 0.0;
    t.sim += s.graph_similarity;
  }
  RunReport report;
  report.scorer = std::move(scorer);
  report.total = scores.size();
  for (std::string_view group : kTaskGroupOrder) {
    auto it = sums.find(std::string(group));
    if (it == sums.end()) continue;
    const Sums& t = it->second;
    const double n = static_cast<double>(t.count);
    report.rows.push_back(ReportRow{std::string(group), t.count, t.malformed, t.exact,
                                    100.0 * t.answer / n, 100.0 * t.graph / n,
                                    100.0 * t.sim / n});
  }
  return report;
}

inline std::string FormatTable(const RunReport& report) {
  auto line = [](const char* task, const char* a, const char* b, const char* c,
                 const char* n) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-10s %12s %12s %12s %8s\n", task, a, b, c, n);
    return std::string(buf);
  };
  std::string out = line("Task", "Answer Acc.", "Graph Acc.", "Graph Sim.", "N");
  for (const auto& row : report.rows) {
    char a[32], b[32], c[32], n[32];
    std::snprintf(a, sizeof(a), "%.1f", row.answer_accuracy);
    std::snprintf(b, sizeof(b), "%.1f", row.reasoning_graph_accuracy);
    std::snprintf(c, sizeof(c), "%.1f", row.graph_similarity);
    std::snprintf(n, sizeof(n), "%zu", row.count);
    out += line(row.task.c_str(), a, b, c, n);
  }
  if (!report.scorer.empty()) out += "scorer: " + report.scorer + "\n";
  return out;
}

inline nlohmann::json ToJson(const RunReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({
        {"task", row.task},
        {"count", row.count},
        {"malformed", row.malformed},
        {"ged_exact_fraction",
         row.count ? static_cast<double>(row.ged_exact) / static_cast<double>(row.count) : 0.0},
        {"answer_accuracy", row.answer_accuracy},
        {"reasoning_graph_accuracy", row.reasoning_graph_accuracy},
        {"graph_similarity", row.graph_similarity},
    });
  }
  return {{"rows", rows},
          {"scorer", report.scorer},
          {"fallback_similarity", report.fallback_similarity},
          {"total", report.total}};
}

}  // namespace street

#endif  // STREET_METRICS_HPP_
