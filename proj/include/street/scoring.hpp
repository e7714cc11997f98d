#ifndef STREET_SCORING_HPP_
#define STREET_SCORING_HPP_

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "street/codec.hpp"
#include "street/corpus.hpp"
#include "street/metrics.hpp"
#include "street/similarity.hpp"

namespace street {

struct ScoringOptions {
  int jobs = 1;
  GedOptions ged;
  std::shared_ptr<const TextScorer> soft_scorer;  // null: builtin overlap
  double soft_threshold = kDefaultSoftThreshold;
};

struct ScoringRun {
  std::vector<QuestionScore> scores;  // input order; records without a prediction skipped
  std::vector<std::string> skipped_ids;
  RunReport report;
  std::string scorer_note;  // set when the configured scorer could not be used
};

// Runs fn(i) for i in [0, n) on `jobs` threads pulling indices from a shared
// counter.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

namespace scoring_internal {

inline bool UsesSoftSigma(Task task) {
  return SimilarityPolicy::ForTask(task).kind() == SimilarityKind::kSoftThreshold;
}

// Every (pred step, gold step) text pair a soft-σ question can ask about.
inline std::vector<ScorePair> SoftPairs(const std::vector<CorpusRecord>& records) {
  std::vector<ScorePair> pairs;
  for (const auto& record : records) {
    if (!record.predicted_proof || !UsesSoftSigma(record.task)) continue;
    auto parsed = ParseModelOutput(*record.predicted_proof, record.gold);
    if (!parsed.ok()) continue;
    for (NodeId p : parsed->graph.StepIds()) {
      for (NodeId g : record.gold.StepIds()) {
        pairs.push_back({parsed->graph.node(p).text, record.gold.node(g).text});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace scoring_internal

// Scores every record that carries a prediction. Soft-σ pairs are fetched from
// the scorer in one batch first; if that fails, builtin overlap is used and the
// run says so. Output does not depend on `jobs`.
inline ScoringRun ScoreRecords(const std::vector<CorpusRecord>& records,
                               const ScoringOptions& options) {
  ScoringRun run;
  std::shared_ptr<const TextScorer> scorer =
      options.soft_scorer ? options.soft_scorer : std::make_shared<OverlapScorer>();
  const auto pairs = scoring_internal::SoftPairs(records);
  if (!pairs.empty()) {
    auto cache = std::make_shared<CachingScorer>(scorer);
    auto fetched = cache->Prefetch(pairs);
    if (fetched.ok()) {
      scorer = cache;
    } else {
      run.scorer_note = "fallback-similarity: builtin-overlap (" + fetched.error().ToString() + ")";
      scorer = std::make_shared<OverlapScorer>();
    }
  }
  std::map<Task, SimilarityPolicy> policies;
  for (Task task : kAllTasks) {
    policies.emplace(task, SimilarityPolicy::ForTask(task, scorer, options.soft_threshold));
  }

  std::vector<std::size_t> scored;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].predicted_proof) {
      scored.push_back(i);
    } else {
      run.skipped_ids.push_back(records[i].id);
    }
  }
  run.scores.resize(scored.size());
  ParallelFor(scored.size(), options.jobs, [&](std::size_t k) {
    const CorpusRecord& record = records[scored[k]];
    QuestionScore score = ScoreQuestion(*record.predicted_proof, record.gold,
                                        policies.at(record.task), options.ged);
    score.id = record.id;
    run.scores[k] = std::move(score);
  });

  char threshold[32];
  std::snprintf(threshold, sizeof(threshold), "%.2f", options.soft_threshold);
  std::string disclosure = "soft sigma " + scorer->Describe() + " > " + threshold;
  if (!run.scorer_note.empty()) disclosure += "; " + run.scorer_note;
  run.report = Aggregate(run.scores, disclosure);
  run.report.fallback_similarity =
      !run.scorer_note.empty() || policies.at(Task::kArc).fallback_count() > 0 ||
      policies.at(Task::kArLsat).fallback_count() > 0;
  return run;
}

}  // namespace street

#endif  // STREET_SCORING_HPP_
