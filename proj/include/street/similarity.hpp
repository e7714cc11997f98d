#ifndef STREET_SIMILARITY_HPP_
#define STREET_SIMILARITY_HPP_

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "street/decimal.hpp"
#include "street/graph.hpp"
#include "street/result.hpp"
#include "street/task.hpp"
#include "street/tlu.hpp"

namespace street {

// SCONE: byte equality after trimming outer whitespace.
inline bool SigmaExact(std::string_view a, std::string_view b) {
  return Trim(a) == Trim(b);
}

// Every maximal numeric literal in `text`, as a set. A sign is part of the
// literal only right after '=', '(' or the start of the text; thousands
// commas need exactly three digits after them; "48/2" gives {48, 2} and
// "60%" gives {60}.
inline std::set<Decimal> ExtractMathValues(std::string_view text) {
  auto digit = [&](std::size_t i) {
    return i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]));
  };
  std::set<Decimal> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!digit(i)) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    if (begin > 0 && (text[begin - 1] == '-' || text[begin - 1] == '+')) {
      std::size_t k = begin - 1;
      while (k > 0 && (text[k - 1] == ' ' || text[k - 1] == '\t')) --k;
      if (k == 0 || text[k - 1] == '=' || text[k - 1] == '(') --begin;
    }
    while (digit(i)) ++i;
    while (i < text.size() && text[i] == ',' && digit(i + 1) && digit(i + 2) &&
           digit(i + 3) && !digit(i + 4)) {
      i += 4;
    }
    if (i < text.size() && text[i] == '.' && digit(i + 1)) {
      ++i;
      while (digit(i)) ++i;
    }
    if (auto value = Decimal::Parse(text.substr(begin, i - begin))) out.insert(*value);
  }
  return out;
}

// GSM8K / AQUA-RAT: equal sets of mathematical values.
inline bool SigmaMath(std::string_view a, std::string_view b) {
  return ExtractMathValues(a) == ExtractMathValues(b);
}

namespace similarity_internal {

inline std::vector<std::string> OverlapTokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& token : Tokenize(text).tokens) {
    if (token.text.size() == 1 && tlu_internal::IsPunct(token.text[0])) continue;
    std::string lowered = token.text;
    for (char& c : lowered) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    out.push_back(std::move(lowered));
  }
  return out;
}

}  // namespace similarity_internal

// Token-level F1 over lowercased tokens with punctuation removed.
inline double BuiltinOverlapScore(std::string_view a, std::string_view b) {
  const auto ta = similarity_internal::OverlapTokens(a);
  const auto tb = similarity_internal::OverlapTokens(b);
  if (ta.empty() && tb.empty()) return 1.0;
  if (ta.empty() || tb.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : ta) ++counts[t];
  int common = 0;
  for (const auto& t : tb) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  return 2.0 * common / static_cast<double>(ta.size() + tb.size());
}

struct ScorePair {
  std::string candidate;  // predicted text
  std::string reference;  // gold text

  auto operator<=>(const ScorePair&) const = default;
};

// Scores (candidate, reference) pairs; one score per pair, in input order.
class TextScorer {
 public:
  virtual ~TextScorer() = default;
  virtual Result<std::vector<double>> Score(std::span<const ScorePair> pairs) const = 0;
  virtual std::string Describe() const = 0;
};

class OverlapScorer final : public TextScorer {
 public:
  Result<std::vector<double>> Score(std::span<const ScorePair> pairs) const override {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const ScorePair& p : pairs) {
      out.push_back(BuiltinOverlapScore(p.candidate, p.reference));
    }
    return out;
  }
  std::string Describe() const override { return "builtin-overlap"; }
};

// Runs `command` through /bin/sh once per batch. Its stdin receives one JSON
// object {"candidate": ..., "reference": ...} per line; it must print one
// decimal score per line, in the same order. At most one process runs at a
// time per scorer.
class ExternalScorer final : public TextScorer {
 public:
  explicit ExternalScorer(std::string command) : command_(std::move(command)) {}

  Result<std::vector<double>> Score(std::span<const ScorePair> pairs) const override {
    if (pairs.empty()) return std::vector<double>{};
    std::lock_guard<std::mutex> lock(mutex_);
    char path[] = "/tmp/street-scorer-XXXXXX";
    const int fd = ::mkstemp(path);
    if (fd < 0) return Unavailable("cannot create request file");
    std::string request;
    for (const ScorePair& p : pairs) {
      nlohmann::json line = {{"candidate", p.candidate}, {"reference", p.reference}};
      request += line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
      request += '\n';
    }
    const bool written = WriteAll(fd, request);
    ::close(fd);
    if (!written) {
      ::unlink(path);
      return Unavailable("cannot write request file");
    }
    const std::string shell = "(" + command_ + ") < '" + std::string(path) + "'";
    FILE* pipe = ::popen(shell.c_str(), "r");
    if (pipe == nullptr) {
      ::unlink(path);
      return Unavailable("cannot start scorer");
    }
    std::string output;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, n);
    const int status = ::pclose(pipe);
    ::unlink(path);
    if (status != 0) return Unavailable("scorer exited with status " + std::to_string(status));
    std::vector<double> scores;
    std::size_t begin = 0;
    while (begin < output.size()) {
      std::size_t end = output.find('\n', begin);
      if (end == std::string::npos) end = output.size();
      const std::string line(Trim(std::string_view(output).substr(begin, end - begin)));
      begin = end + 1;
      if (line.empty()) continue;
      char* parse_end = nullptr;
      const double value = std::strtod(line.c_str(), &parse_end);
      if (parse_end == line.c_str() || *parse_end != '\0') {
        return Unavailable("unparseable score line \"" + line + "\"");
      }
      scores.push_back(value);
    }
    if (scores.size() != pairs.size()) {
      return Unavailable("expected " + std::to_string(pairs.size()) + " scores, got " +
                         std::to_string(scores.size()));
    }
    return scores;
  }

  std::string Describe() const override { return "external:" + command_; }

 private:
  static Error Unavailable(std::string message) {
    return MakeError(ErrorCode::kExternalScorerUnavailable, std::move(message));
  }

  static bool WriteAll(int fd, const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
      const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
      if (n <= 0) return false;
      done += static_cast<std::size_t>(n);
    }
    return true;
  }

  std::string command_;
  mutable std::mutex mutex_;
};

// Memoizes another scorer. Prefetch() sends every uncached pair in a single
// batch so a run needs one external process; later lookups are read-only.
class CachingScorer final : public TextScorer {
 public:
  explicit CachingScorer(std::shared_ptr<const TextScorer> inner) : inner_(std::move(inner)) {}

  Result<std::size_t> Prefetch(std::vector<ScorePair> pairs) const {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<ScorePair> missing;
    {
      std::shared_lock lock(mutex_);
      for (auto& p : pairs) {
        if (!cache_.count(p)) missing.push_back(std::move(p));
      }
    }
    auto scores = inner_->Score(missing);
    if (!scores.ok()) return scores.error();
    std::unique_lock lock(mutex_);
    for (std::size_t i = 0; i < missing.size(); ++i) {
      cache_[std::move(missing[i])] = (*scores)[i];
    }
    return missing.size();
  }

  Result<std::vector<double>> Score(std::span<const ScorePair> pairs) const override {
    std::vector<double> out(pairs.size());
    std::vector<ScorePair> missing;
    std::vector<std::size_t> slots;
    {
      std::shared_lock lock(mutex_);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto it = cache_.find(pairs[i]);
        if (it != cache_.end()) {
          out[i] = it->second;
        } else {
          missing.push_back(pairs[i]);
          slots.push_back(i);
        }
      }
    }
    if (!missing.empty()) {
      auto scores = inner_->Score(missing);
      if (!scores.ok()) return scores.error();
      std::unique_lock lock(mutex_);
      for (std::size_t k = 0; k < missing.size(); ++k) {
        out[slots[k]] = (*scores)[k];
        cache_[missing[k]] = (*scores)[k];
      }
    }
    return out;
  }

  std::string Describe() const override { return inner_->Describe(); }

 private:
  std::shared_ptr<const TextScorer> inner_;
  mutable std::shared_mutex mutex_;
  mutable std::map<ScorePair, double> cache_;
};

enum class SimilarityKind { kExactMatch, kMathValueSet, kSoftThreshold };

inline constexpr double kDefaultSoftThreshold = 0.25;

// Node-equivalence test σ used by both graph metrics.
class SimilarityPolicy {
 public:
  static SimilarityPolicy Exact() { return SimilarityPolicy(SimilarityKind::kExactMatch); }
  static SimilarityPolicy Math() { return SimilarityPolicy(SimilarityKind::kMathValueSet); }
  static SimilarityPolicy Soft(double threshold = kDefaultSoftThreshold,
                               std::shared_ptr<const TextScorer> scorer = nullptr) {
    SimilarityPolicy out(SimilarityKind::kSoftThreshold);
    out.threshold_ = std::clamp(threshold, 0.0, 1.0);
    if (scorer) out.scorer_ = std::move(scorer);
    return out;
  }

  // SCONE -> exact, GSM8K / AQUA-RAT -> math values, ARC / AR-LSAT -> soft.
  static SimilarityPolicy ForTask(Task task,
                                  std::shared_ptr<const TextScorer> soft_scorer = nullptr,
                                  double threshold = kDefaultSoftThreshold) {
    if (IsScone(task)) return Exact();
    if (task == Task::kGsm8k || task == Task::kAquaRat) return Math();
    return Soft(threshold, std::move(soft_scorer));
  }

  SimilarityKind kind() const { return kind_; }
  double threshold() const { return threshold_; }
  const std::shared_ptr<const TextScorer>& scorer() const { return scorer_; }
  // Soft comparisons that fell back to builtin overlap after a scorer failure.
  long fallback_count() const { return fallbacks_->load(); }

  bool Equivalent(std::string_view candidate, std::string_view reference) const {
    switch (kind_) {
      case SimilarityKind::kExactMatch: return SigmaExact(candidate, reference);
      case SimilarityKind::kMathValueSet: return SigmaMath(candidate, reference);
      case SimilarityKind::kSoftThreshold: break;
    }
    const ScorePair pair{std::string(candidate), std::string(reference)};
    auto scores = scorer_->Score(std::span<const ScorePair>(&pair, 1));
    if (!scores.ok()) {
      fallbacks_->fetch_add(1);
      return BuiltinOverlapScore(candidate, reference) > threshold_;
    }
    return scores->front() > threshold_;
  }

 private:
  explicit SimilarityPolicy(SimilarityKind kind)
      : kind_(kind),
        scorer_(std::make_shared<OverlapScorer>()),
        fallbacks_(std::make_shared<std::atomic<long>>(0)) {}

  SimilarityKind kind_;
  double threshold_ = kDefaultSoftThreshold;
  std::shared_ptr<const TextScorer> scorer_;
  std::shared_ptr<std::atomic<long>> fallbacks_;
};

// Soft σ with the scorer error surfaced: score(candidate, reference) > threshold.
inline Result<bool> SigmaSoft(std::string_view candidate, std::string_view reference,
                              const SimilarityPolicy& policy) {
  const ScorePair pair{std::string(candidate), std::string(reference)};
  auto scores = policy.scorer()->Score(std::span<const ScorePair>(&pair, 1));
  if (!scores.ok()) return scores.error();
  return scores->front() > policy.threshold();
}

}  // namespace street

#endif  // STREET_SIMILARITY_HPP_
