#ifndef STREET_CODEC_HPP_
#define STREET_CODEC_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "street/graph.hpp"
#include "street/result.hpp"
#include "street/task.hpp"

namespace street {

// The two halves of a linearized example:
//   $question$ = (1) ... (2) ...
//   $proof$ = (1) & (2) -> (3): ...; (3) -> (4): The answer is 7;
struct LinearizedExample {
  std::string question_block;
  std::string proof_block;
  Task task = Task::kGsm8k;

  bool operator==(const LinearizedExample&) const = default;
};

inline constexpr std::string_view kQuestionTag = "$question$";
inline constexpr std::string_view kProofTag = "$proof$";

inline std::string ToText(const LinearizedExample& example) {
  return std::string(kQuestionTag) + " = " + example.question_block + "\n\n" +
         std::string(kProofTag) + " = " + example.proof_block;
}

namespace codec_internal {

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool IsDigit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

// Trims and collapses internal whitespace runs to one space.
inline std::string NormalizeSpace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// Position of the marker "(k)" at or after `from`, standing alone between
// whitespace (or the block edges).
inline std::size_t FindMarker(std::string_view block, int k, std::size_t from) {
  const std::string marker = "(" + std::to_string(k) + ")";
  for (std::size_t at = block.find(marker, from); at != std::string_view::npos;
       at = block.find(marker, at + 1)) {
    const bool left_ok = at == 0 || IsSpace(block[at - 1]);
    const std::size_t after = at + marker.size();
    const bool right_ok = after == block.size() || IsSpace(block[after]);
    if (left_ok && right_ok) return at;
  }
  return std::string_view::npos;
}

inline const std::regex& OptionPattern() {
  static const std::regex kOption(R"(^([A-E])\))");
  return kOption;
}

// Last token is a soft separator, so the TLU continues into the next one.
inline bool EndsMidSentence(std::string_view text) {
  const std::string_view t = Trim(text);
  if (t.empty()) return false;
  if (t.back() == ',' || t.back() == '-') return true;
  auto ends_with_word = [&](std::string_view word) {
    return t.size() >= word.size() + 1 &&
           t.substr(t.size() - word.size()) == word &&
           IsSpace(t[t.size() - word.size() - 1]);
  };
  return ends_with_word("and") || ends_with_word("then");
}

}  // namespace codec_internal

// Splits a question block into its numbered TLU texts; ids run 1..N.
inline Result<std::vector<std::string>> ParseQuestionBlock(std::string_view block) {
  using codec_internal::FindMarker;
  std::vector<std::string> texts;
  std::size_t at = FindMarker(block, 1, 0);
  if (at == std::string_view::npos || !Trim(block.substr(0, at)).empty()) {
    return MakeError(ErrorCode::kSyntaxError, "expected \"(1)\"", 0);
  }
  for (int k = 1;; ++k) {
    const std::size_t text_begin = at + std::to_string(k).size() + 2;
    const std::size_t next = FindMarker(block, k + 1, text_begin);
    const std::size_t text_end = next == std::string_view::npos ? block.size() : next;
    std::string text =
        codec_internal::NormalizeSpace(block.substr(text_begin, text_end - text_begin));
    if (text.empty()) {
      return MakeError(ErrorCode::kSyntaxError, "empty TLU " + std::to_string(k),
                       text_begin);
    }
    texts.push_back(std::move(text));
    if (next == std::string_view::npos) break;
    at = next;
  }
  return texts;
}

// Assigns node kinds to the flat premise list. Options are TLUs starting with
// "A)".."E)"; the question is the TLU ending in '?' together with directly
// preceding TLUs that stop mid-sentence; SCONE state sentences are context and
// the remaining SCONE TLUs (actions) are question nodes.
inline std::map<NodeId, Node> InferPremiseKinds(Task task,
                                                const std::vector<std::string>& texts) {
  std::vector<Node> nodes(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) nodes[i].text = texts[i];
  if (IsScone(task)) {
    for (Node& node : nodes) {
      node.kind = ParseStateSentence(node.text) ? NodeKind::kContext
                                                : NodeKind::kQuestion;
    }
  } else {
    const bool multiple_choice = AnswerTypeOf(task) == AnswerType::kMultipleChoice;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::smatch m;
      if (multiple_choice &&
          std::regex_search(nodes[i].text, m, codec_internal::OptionPattern())) {
        nodes[i].kind = NodeKind::kOption;
        nodes[i].option_letter = m[1].str()[0];
        continue;
      }
      const std::string_view t = Trim(nodes[i].text);
      if (!t.empty() && t.back() == '?') {
        nodes[i].kind = NodeKind::kQuestion;
        for (std::size_t j = i; j > 0; --j) {
          Node& prev = nodes[j - 1];
          if (prev.kind != NodeKind::kContext ||
              !codec_internal::EndsMidSentence(prev.text)) {
            break;
          }
          prev.kind = NodeKind::kQuestion;
        }
      }
    }
  }
  std::map<NodeId, Node> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out[NodeId(static_cast<int>(i) + 1)] = std::move(nodes[i]);
  }
  return out;
}

struct ProofClause {
  std::vector<NodeId> premises;  // empty for "(0) -> ..."
  NodeId target;
  std::string text;
  std::size_t offset = 0;  // byte offset of the clause in the block
};

// Clauses parsed before the first error. `truncated` is set when the error is
// an unexpected end of input, i.e. the block was cut off mid-clause.
struct ProofParse {
  std::vector<ProofClause> clauses;
  std::optional<Error> error;
  bool truncated = false;
};

namespace codec_internal {

class ProofParser {
 public:
  explicit ProofParser(std::string_view block) : block_(block) {}

  ProofParse Run() {
    ProofParse out;
    while (true) {
      SkipSpace();
      if (AtEnd()) break;
      ProofClause clause;
      clause.offset = pos_;
      if (auto error = ParseClause(clause)) {
        out.truncated = error->position && *error->position >= block_.size();
        out.error = std::move(error);
        break;
      }
      out.clauses.push_back(std::move(clause));
    }
    return out;
  }

 private:
  using MaybeError = std::optional<Error>;

  bool AtEnd() const { return pos_ >= block_.size(); }
  void SkipSpace() {
    while (!AtEnd() && IsSpace(block_[pos_])) ++pos_;
  }

  Error Expected(std::string_view what) const {
    return MakeError(ErrorCode::kSyntaxError,
                     "expected " + std::string(what), std::min(pos_, block_.size()));
  }

  MaybeError ParseId(int& id) {
    SkipSpace();
    if (AtEnd() || block_[pos_] != '(') return Expected("'('");
    ++pos_;
    const std::size_t begin = pos_;
    while (!AtEnd() && IsDigit(block_[pos_])) ++pos_;
    if (pos_ == begin) return Expected("node id");
    if (pos_ - begin > 9) {
      pos_ = begin;
      return Expected("node id below 10^9");
    }
    id = std::stoi(std::string(block_.substr(begin, pos_ - begin)));
    if (AtEnd() || block_[pos_] != ')') return Expected("')'");
    ++pos_;
    return std::nullopt;
  }

  MaybeError ParseClause(ProofClause& clause) {
    std::vector<int> premises;
    int id = 0;
    if (auto e = ParseId(id)) return e;
    premises.push_back(id);
    while (true) {
      SkipSpace();
      if (AtEnd()) return Expected("'&' or '->'");
      if (block_[pos_] == '&') {
        ++pos_;
        if (auto e = ParseId(id)) return e;
        premises.push_back(id);
        continue;
      }
      if (block_.substr(pos_, 2) == "->") {
        pos_ += 2;
        break;
      }
      return Expected("'&' or '->'");
    }
    const bool has_empty_marker =
        std::find(premises.begin(), premises.end(), 0) != premises.end();
    if (has_empty_marker && premises.size() > 1) {
      return MakeError(ErrorCode::kSyntaxError,
                       "(0) must be the only premise", clause.offset);
    }
    int target = 0;
    if (auto e = ParseId(target)) return e;
    SkipSpace();
    if (AtEnd() || block_[pos_] != ':') return Expected("':'");
    ++pos_;
    const std::size_t text_begin = pos_;
    const std::size_t end = FindTerminator(text_begin);
    if (end == std::string_view::npos) {
      pos_ = block_.size();
      return Expected("';'");
    }
    clause.target = NodeId(target);
    if (!has_empty_marker) {
      for (int p : premises) clause.premises.push_back(NodeId(p));
    }
    clause.text = NormalizeSpace(block_.substr(text_begin, end - text_begin));
    pos_ = end + 1;
    return std::nullopt;
  }

  // A ';' ends the step text only if the block ends after it or the next
  // clause starts "(<id>) &" or "(<id>) ->"; step texts may hold ';', '(' and
  // '&' themselves.
  std::size_t FindTerminator(std::size_t from) const {
    for (std::size_t at = block_.find(';', from); at != std::string_view::npos;
         at = block_.find(';', at + 1)) {
      std::size_t i = at + 1;
      while (i < block_.size() && IsSpace(block_[i])) ++i;
      if (i == block_.size()) return at;
      if (block_[i] != '(') continue;
      ++i;
      const std::size_t digits = i;
      while (i < block_.size() && IsDigit(block_[i])) ++i;
      if (i == digits || i >= block_.size() || block_[i] != ')') continue;
      ++i;
      while (i < block_.size() && IsSpace(block_[i])) ++i;
      if (block_.substr(i, 1) == "&" || block_.substr(i, 2) == "->") return at;
    }
    return std::string_view::npos;
  }

  std::string_view block_;
  std::size_t pos_ = 0;
};

}  // namespace codec_internal

inline ProofParse ParseProofClauses(std::string_view block) {
  return codec_internal::ProofParser(block).Run();
}

// Adds proof clauses to the premise nodes. Step ids must continue the
// numbering without gaps and cite only nodes defined before them.
inline Result<ReasoningGraph> AssembleGraph(Task task, std::map<NodeId, Node> nodes,
                                            const std::vector<ProofClause>& clauses) {
  std::set<Edge> edges;
  int next = nodes.empty() ? 1 : nodes.rbegin()->first.value() + 1;
  for (const ProofClause& clause : clauses) {
    if (nodes.count(clause.target)) {
      return MakeError(ErrorCode::kDuplicateStepId,
                       ToString(clause.target) + " already defined", clause.offset);
    }
    if (clause.target.value() != next) {
      return MakeError(ErrorCode::kNonConsecutiveStepId,
                       "expected " + ToString(NodeId(next)) + ", got " +
                           ToString(clause.target),
                       clause.offset);
    }
    if (clause.text.empty()) {
      return MakeError(ErrorCode::kEmptyStepText, ToString(clause.target),
                       clause.offset);
    }
    for (NodeId premise : clause.premises) {
      if (premise == clause.target) {
        return MakeError(ErrorCode::kCycleDetected,
                         ToString(clause.target) + " cites itself", clause.offset);
      }
      if (!nodes.count(premise)) {
        return MakeError(ErrorCode::kDanglingPremise,
                         ToString(premise) + " cited by " + ToString(clause.target),
                         clause.offset);
      }
      edges.insert({premise, clause.target});
    }
    nodes[clause.target] = Node{NodeKind::kReasoningStep, clause.text, 0};
    ++next;
  }
  return WithAnswerNode(ReasoningGraph(task, std::move(nodes), std::move(edges), {}));
}

// Strict parse of a gold example; the result satisfies Validate().
inline Result<ReasoningGraph> Parse(const LinearizedExample& example) {
  auto texts = ParseQuestionBlock(example.question_block);
  if (!texts.ok()) return texts.error();
  const ProofParse proof = ParseProofClauses(example.proof_block);
  if (proof.error) return *proof.error;
  auto graph =
      AssembleGraph(example.task, InferPremiseKinds(example.task, *texts), proof.clauses);
  if (!graph.ok()) return graph.error();
  if (const auto violations = Validate(*graph); !violations.empty()) {
    return MakeError(ErrorCode::kValidationFailed, JoinViolations(violations));
  }
  return graph;
}

// Splits "$question$ = ... $proof$ = ..." into its blocks.
inline Result<LinearizedExample> SplitLinearized(std::string_view text, Task task) {
  const auto q = text.find(kQuestionTag);
  const auto p = text.find(kProofTag);
  if (q == std::string_view::npos || p == std::string_view::npos || p < q) {
    return MakeError(ErrorCode::kSyntaxError, "expected $question$ and $proof$ tags", 0);
  }
  auto block_after = [&](std::size_t tag_pos, std::size_t tag_len, std::size_t end) {
    std::string_view rest = Trim(text.substr(tag_pos + tag_len, end - tag_pos - tag_len));
    if (!rest.empty() && rest.front() == '=') rest.remove_prefix(1);
    return std::string(Trim(rest));
  };
  return LinearizedExample{block_after(q, kQuestionTag.size(), p),
                           block_after(p, kProofTag.size(), text.size()), task};
}

// Canonical encoding: single spaces, ascending premise ids joined by " & ",
// steps in ascending id order, every clause terminated by "; ".
inline LinearizedExample Serialize(const ReasoningGraph& graph) {
  LinearizedExample out;
  out.task = graph.task();
  for (NodeId id : graph.PremiseIds()) {
    if (!out.question_block.empty()) out.question_block += " ";
    out.question_block += ToString(id) + " " + graph.node(id).text;
  }
  for (NodeId id : graph.StepIds()) {
    const auto& premises = graph.Premises(id);
    if (premises.empty()) {
      out.proof_block += ToString(kEmptyPremise);
    } else {
      for (std::size_t i = 0; i < premises.size(); ++i) {
        if (i) out.proof_block += " & ";
        out.proof_block += ToString(premises[i]);
      }
    }
    out.proof_block += " -> " + ToString(id) + ": " + graph.node(id).text + "; ";
  }
  return out;
}

struct ParsedProof {
  ReasoningGraph graph;
  bool truncated = false;
};

// Tolerant entry point for machine-generated proofs. The question block comes
// from the gold graph; only the proof is read from `raw` (anything up to a
// "$proof$ =" tag is ignored). A proof cut off mid-clause keeps its complete
// clauses. Every other failure is returned as the error value.
inline Result<ParsedProof> ParseModelOutput(std::string_view raw,
                                            const ReasoningGraph& gold) {
  std::string_view proof = raw;
  if (const auto tag = raw.rfind(kProofTag); tag != std::string_view::npos) {
    proof = Trim(raw.substr(tag + kProofTag.size()));
    if (!proof.empty() && proof.front() == '=') proof.remove_prefix(1);
  }
  const ProofParse parsed = ParseProofClauses(proof);
  if (parsed.error && !(parsed.truncated && !parsed.clauses.empty())) {
    return *parsed.error;
  }
  if (parsed.clauses.empty()) {
    return MakeError(ErrorCode::kSyntaxError, "no proof clauses", 0);
  }
  std::map<NodeId, Node> premises;
  for (NodeId id : gold.PremiseIds()) premises[id] = gold.node(id);
  auto graph = AssembleGraph(gold.task(), std::move(premises), parsed.clauses);
  if (!graph.ok()) return graph.error();
  return ParsedProof{std::move(graph).value(), parsed.error.has_value()};
}

}  // namespace street

#endif  // STREET_CODEC_HPP_
