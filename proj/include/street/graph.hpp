#ifndef STREET_GRAPH_HPP_
#define STREET_GRAPH_HPP_

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "street/decimal.hpp"
#include "street/result.hpp"
#include "street/task.hpp"

namespace street {

// 1-based node number as printed in linearized encodings. 0 is the
// empty-premise marker and never names a node.
class NodeId {
 public:
  constexpr NodeId() = default;
  constexpr explicit NodeId(int value) : value_(value) {}
  constexpr int value() const { return value_; }
  auto operator<=>(const NodeId&) const = default;

 private:
  int value_ = 0;
};

inline constexpr NodeId kEmptyPremise{0};

inline std::string ToString(NodeId id) {
  return "(" + std::to_string(id.value()) + ")";
}

enum class NodeKind { kContext, kQuestion, kOption, kAnswer, kReasoningStep };

inline const char* NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kContext: return "context";
    case NodeKind::kQuestion: return "question";
    case NodeKind::kOption: return "option";
    case NodeKind::kAnswer: return "answer";
    case NodeKind::kReasoningStep: return "step";
  }
  return "?";
}

inline bool IsStepKind(NodeKind kind) {
  return kind == NodeKind::kReasoningStep || kind == NodeKind::kAnswer;
}

struct Node {
  NodeKind kind = NodeKind::kContext;
  std::string text;
  char option_letter = 0;  // 'A'.. for kOption nodes

  bool operator==(const Node&) const = default;
};

struct Edge {
  NodeId from;
  NodeId to;
  auto operator<=>(const Edge&) const = default;
};

inline bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

inline std::string_view Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n\f\v");
  return text.substr(first, last - first + 1);
}

inline constexpr std::string_view kAnswerPrefix = "The answer is";

// Directed acyclic graph of TLU nodes; edges run premise -> conclusion.
// Immutable once constructed. The constructor does not validate; use Build()
// for checked construction and Validate() to list rule violations.
class ReasoningGraph {
 public:
  ReasoningGraph() = default;
  ReasoningGraph(Task task, std::map<NodeId, Node> nodes, std::set<Edge> edges,
                 std::optional<NodeId> answer_node)
      : task_(task),
        nodes_(std::move(nodes)),
        edges_(std::move(edges)),
        answer_node_(answer_node) {
    for (const auto& [id, node] : nodes_) {
      premises_[id];
      successors_[id];
    }
    for (const Edge& e : edges_) {
      premises_[e.to].push_back(e.from);
      successors_[e.from].push_back(e.to);
    }
  }

  Task task() const { return task_; }
  const std::map<NodeId, Node>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::optional<NodeId> answer_node() const { return answer_node_; }

  bool Contains(NodeId id) const { return nodes_.count(id) != 0; }
  const Node& node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
      throw std::out_of_range("no node " + ToString(id));
    }
    return it->second;
  }
  bool IsStep(NodeId id) const { return Contains(id) && IsStepKind(node(id).kind); }

  // Sorted ids of the nodes with an edge into `id`.
  const std::vector<NodeId>& Premises(NodeId id) const { return Lookup(premises_, id); }
  const std::vector<NodeId>& Successors(NodeId id) const {
    return Lookup(successors_, id);
  }

  std::vector<NodeId> StepIds() const {
    std::vector<NodeId> out;
    for (const auto& [id, node] : nodes_) {
      if (IsStepKind(node.kind)) out.push_back(id);
    }
    return out;
  }
  std::vector<NodeId> PremiseIds() const {
    std::vector<NodeId> out;
    for (const auto& [id, node] : nodes_) {
      if (!IsStepKind(node.kind)) out.push_back(id);
    }
    return out;
  }
  std::size_t StepCount() const { return StepIds().size(); }

  bool operator==(const ReasoningGraph& other) const {
    return task_ == other.task_ && nodes_ == other.nodes_ &&
           edges_ == other.edges_ && answer_node_ == other.answer_node_;
  }

 private:
  static const std::vector<NodeId>& Lookup(
      const std::map<NodeId, std::vector<NodeId>>& index, NodeId id) {
    static const std::vector<NodeId> kEmpty;
    auto it = index.find(id);
    return it == index.end() ? kEmpty : it->second;
  }

  Task task_ = Task::kGsm8k;
  std::map<NodeId, Node> nodes_;
  std::set<Edge> edges_;
  std::optional<NodeId> answer_node_;
  // Edges are iterated in sorted order, so both lists come out sorted.
  std::map<NodeId, std::vector<NodeId>> premises_;
  std::map<NodeId, std::vector<NodeId>> successors_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  kDanglingEdge,
  kCycle,
  kIllegalEdgeTarget,
  kTopologicalOrder,
  kPremiseAfterStep,
  kMissingAnswerNode,
  kMultipleAnswerNodes,
  kEmptyText,
};

inline const char* ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDanglingEdge: return "DanglingEdge";
    case ViolationKind::kCycle: return "CycleDetected";
    case ViolationKind::kIllegalEdgeTarget: return "IllegalEdgeTarget";
    case ViolationKind::kTopologicalOrder: return "TopologicalOrderViolation";
    case ViolationKind::kPremiseAfterStep: return "PremiseAfterStep";
    case ViolationKind::kMissingAnswerNode: return "MissingAnswerNode";
    case ViolationKind::kMultipleAnswerNodes: return "MultipleAnswerNodes";
    case ViolationKind::kEmptyText: return "EmptyText";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::vector<NodeId> nodes;

  std::string ToString() const {
    std::string out = ViolationKindName(kind);
    if (!nodes.empty()) {
      out += " [";
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += " ";
        out += street::ToString(nodes[i]);
      }
      out += "]";
    }
    return out;
  }
};

inline std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.ToString();
  }
  return out;
}

// Sinks whose text begins with "The answer is", ascending by id.
inline std::vector<NodeId> AnswerSinks(const ReasoningGraph& graph) {
  std::vector<NodeId> out;
  for (const auto& [id, node] : graph.nodes()) {
    if (StartsWith(node.text, kAnswerPrefix) && graph.Successors(id).empty()) {
      out.push_back(id);
    }
  }
  return out;
}

namespace graph_internal {

// Kahn's algorithm with a min-heap; returns the order and whether every node
// was emitted.
inline std::pair<std::vector<NodeId>, bool> KahnOrder(const ReasoningGraph& graph) {
  std::map<NodeId, int> in_degree;
  for (const auto& [id, node] : graph.nodes()) in_degree[id] = 0;
  for (const Edge& e : graph.edges()) {
    if (graph.Contains(e.from) && graph.Contains(e.to)) ++in_degree[e.to];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [id, degree] : in_degree) {
    if (degree == 0) ready.push(id);
  }
  std::vector<NodeId> order;
  while (!ready.empty()) {
    const NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId next : graph.Successors(id)) {
      if (graph.Contains(next) && --in_degree[next] == 0) ready.push(next);
    }
  }
  const bool complete = order.size() == graph.nodes().size();
  return {std::move(order), complete};
}

}  // namespace graph_internal

inline std::vector<Violation> Validate(const ReasoningGraph& graph) {
  std::vector<Violation> out;
  for (const Edge& e : graph.edges()) {
    if (!graph.Contains(e.from) || !graph.Contains(e.to)) {
      out.push_back({ViolationKind::kDanglingEdge, {e.from, e.to}});
    }
  }
  for (const auto& [id, node] : graph.nodes()) {
    if (Trim(node.text).empty()) out.push_back({ViolationKind::kEmptyText, {id}});
  }
  if (const auto [order, complete] = graph_internal::KahnOrder(graph); !complete) {
    std::vector<NodeId> stuck;
    const std::set<NodeId> done(order.begin(), order.end());
    for (const auto& [id, node] : graph.nodes()) {
      if (!done.count(id)) stuck.push_back(id);
    }
    out.push_back({ViolationKind::kCycle, stuck});
  }
  for (const Edge& e : graph.edges()) {
    if (!graph.Contains(e.from) || !graph.Contains(e.to)) continue;
    const NodeKind target = graph.node(e.to).kind;
    if (target == NodeKind::kContext || target == NodeKind::kQuestion) {
      out.push_back({ViolationKind::kIllegalEdgeTarget, {e.from, e.to}});
    } else if (IsStepKind(target) && !(e.from < e.to)) {
      out.push_back({ViolationKind::kTopologicalOrder, {e.from, e.to}});
    }
  }
  const auto premises = graph.PremiseIds();
  const auto steps = graph.StepIds();
  if (!premises.empty() && !steps.empty() && steps.front() < premises.back()) {
    out.push_back({ViolationKind::kPremiseAfterStep, {premises.back(), steps.front()}});
  }
  if (!IsScone(graph.task())) {
    const auto sinks = AnswerSinks(graph);
    if (sinks.empty()) {
      out.push_back({ViolationKind::kMissingAnswerNode, {}});
    } else if (sinks.size() > 1) {
      out.push_back({ViolationKind::kMultipleAnswerNodes, sinks});
    }
  }
  return out;
}

// Deterministic topological order; ties go to the smaller id.
inline Result<std::vector<NodeId>> TopologicalOrder(const ReasoningGraph& graph) {
  auto [order, complete] = graph_internal::KahnOrder(graph);
  if (!complete) return MakeError(ErrorCode::kCycleDetected, "graph has a cycle");
  return order;
}

// Transitive closure of incoming edges, excluding `id` itself.
inline Result<std::set<NodeId>> Ancestors(const ReasoningGraph& graph, NodeId id) {
  if (!graph.Contains(id)) {
    return MakeError(ErrorCode::kUnknownNode, "no node " + ToString(id));
  }
  std::set<NodeId> seen;
  std::vector<NodeId> stack(graph.Premises(id).begin(), graph.Premises(id).end());
  while (!stack.empty()) {
    const NodeId next = stack.back();
    stack.pop_back();
    if (!seen.insert(next).second) continue;
    for (NodeId p : graph.Premises(next)) stack.push_back(p);
  }
  seen.erase(id);
  return seen;
}

// ---------------------------------------------------------------------------
// Construction

struct Choice {
  char letter = 'A';
  bool operator==(const Choice&) const = default;
};

struct Number {
  Decimal value;
  bool operator==(const Number&) const = default;
};

// Final state per tracked object, keyed "beaker3", "position7", ...
struct WorldState {
  std::map<std::string, std::string> objects;
  bool operator==(const WorldState&) const = default;
};

using AnswerValue = std::variant<Choice, Number, WorldState>;

inline std::string ToString(const AnswerValue& value) {
  if (const auto* c = std::get_if<Choice>(&value)) return std::string(1, c->letter);
  if (const auto* n = std::get_if<Number>(&value)) return n->value.str();
  std::string out = "{";
  for (const auto& [key, state] : std::get<WorldState>(value).objects) {
    if (out.size() > 1) out += ", ";
    out += key + ": " + state;
  }
  return out + "}";
}

// Question components, already split into TLU texts.
struct QaComponents {
  std::vector<std::string> context;
  std::vector<std::string> question;
  // One TLU list per option, options in letter order.
  std::vector<std::vector<std::string>> options;
  std::optional<AnswerValue> answer;
};

struct StepSpec {
  // Empty, or {kEmptyPremise}, for a step without antecedents.
  std::vector<NodeId> premises;
  std::string text;
};

// Last answer sink of a non-SCONE graph: the node that holds the answer.
inline std::optional<NodeId> FindAnswerNode(Task task, const ReasoningGraph& graph) {
  if (IsScone(task)) return std::nullopt;
  std::optional<NodeId> found;
  for (NodeId id : AnswerSinks(graph)) {
    if (graph.IsStep(id)) found = id;
  }
  return found;
}

// Re-tags the answer sink as kAnswer and records it on the graph.
inline ReasoningGraph WithAnswerNode(const ReasoningGraph& graph) {
  const auto answer = FindAnswerNode(graph.task(), graph);
  auto nodes = graph.nodes();
  for (auto& [id, node] : nodes) {
    if (IsStepKind(node.kind)) {
      node.kind = (answer && id == *answer) ? NodeKind::kAnswer
                                            : NodeKind::kReasoningStep;
    }
  }
  return ReasoningGraph(graph.task(), std::move(nodes), graph.edges(), answer);
}

// Premises are numbered context, question, options; steps follow in order.
inline Result<ReasoningGraph> Build(Task task, const QaComponents& components,
                                    const std::vector<StepSpec>& steps) {
  std::map<NodeId, Node> nodes;
  int next = 1;
  for (const auto& text : components.context) {
    nodes[NodeId(next++)] = Node{NodeKind::kContext, text, 0};
  }
  for (const auto& text : components.question) {
    nodes[NodeId(next++)] = Node{NodeKind::kQuestion, text, 0};
  }
  for (std::size_t k = 0; k < components.options.size(); ++k) {
    for (const auto& text : components.options[k]) {
      nodes[NodeId(next++)] =
          Node{NodeKind::kOption, text, static_cast<char>('A' + k)};
    }
  }
  std::set<Edge> edges;
  for (const StepSpec& step : steps) {
    const NodeId id(next++);
    if (Trim(step.text).empty()) {
      return MakeError(ErrorCode::kEmptyStepText, "step " + ToString(id));
    }
    for (NodeId premise : step.premises) {
      if (premise == kEmptyPremise) continue;
      if (!nodes.count(premise)) {
        if (premise == id) {
          return MakeError(ErrorCode::kCycleDetected,
                           "step " + ToString(id) + " cites itself");
        }
        return MakeError(ErrorCode::kDanglingPremise,
                         ToString(premise) + " cited by " + ToString(id));
      }
      edges.insert({premise, id});
    }
    nodes[id] = Node{NodeKind::kReasoningStep, step.text, 0};
  }
  return WithAnswerNode(ReasoningGraph(task, std::move(nodes), std::move(edges), {}));
}

// ---------------------------------------------------------------------------
// Answers

namespace graph_internal {

inline const std::vector<std::string>& Ordinals() {
  static const std::vector<std::string> kOrdinals = {
      "first", "second", "third",   "fourth", "fifth",
      "sixth", "seventh", "eighth", "ninth",  "tenth"};
  return kOrdinals;
}

}  // namespace graph_internal

inline std::string OrdinalWord(int index) {
  const auto& ordinals = graph_internal::Ordinals();
  if (index >= 1 && index <= static_cast<int>(ordinals.size())) {
    return ordinals[index - 1];
  }
  return std::to_string(index) + "th";
}

struct StateSentence {
  std::string object;  // "beaker3", "position7"
  std::string state;   // text after "has "
};

// Parses "<ordinal> beaker has <state>" and "position <k> has <state>".
inline std::optional<StateSentence> ParseStateSentence(std::string_view raw) {
  const std::string text(Trim(raw));
  static const std::regex kBeaker(R"(^(\w+) beaker has (.+)$)");
  static const std::regex kPosition(R"(^position (\d+) has (.+)$)");
  std::smatch m;
  if (std::regex_match(text, m, kBeaker)) {
    const auto& ordinals = graph_internal::Ordinals();
    auto it = std::find(ordinals.begin(), ordinals.end(), m[1].str());
    if (it == ordinals.end()) return std::nullopt;
    return StateSentence{"beaker" + std::to_string(it - ordinals.begin() + 1),
                         m[2].str()};
  }
  if (std::regex_match(text, m, kPosition)) {
    return StateSentence{"position" + m[1].str(), m[2].str()};
  }
  return std::nullopt;
}

// Parses "The answer is A)", "The answer is A", "The answer is 72." etc.
inline Result<AnswerValue> ParseAnswerText(std::string_view raw, Task task) {
  static const std::regex kChoice(R"(^The answer is\s*\(?([A-Ea-e])\)?\s*[.;:!]*$)");
  static const std::regex kNumber(
      R"(^The answer is\s*\$?\s*([-+]?[0-9][0-9,]*(?:\.[0-9]+)?)\s*[.;:!]*$)");
  const std::string text(Trim(raw));
  std::smatch m;
  if (AnswerTypeOf(task) == AnswerType::kMultipleChoice) {
    if (std::regex_match(text, m, kChoice)) {
      const char letter = static_cast<char>(std::toupper(m[1].str()[0]));
      if (letter - 'A' < OptionCount(task)) return AnswerValue{Choice{letter}};
    }
  } else if (AnswerTypeOf(task) == AnswerType::kNumber) {
    if (std::regex_match(text, m, kNumber)) {
      if (auto value = Decimal::Parse(m[1].str())) return AnswerValue{Number{*value}};
    }
  }
  return MakeError(ErrorCode::kUnparseableAnswerText, text);
}

// Tracked objects are the initial-state premise TLUs; each takes the state of
// the last step (in topological order) that describes it.
inline Result<AnswerValue> ExtractWorldState(const ReasoningGraph& graph) {
  WorldState state;
  for (NodeId id : graph.PremiseIds()) {
    if (auto s = ParseStateSentence(graph.node(id).text)) {
      state.objects.emplace(s->object, s->state);
    }
  }
  auto order = TopologicalOrder(graph);
  if (!order.ok()) return order.error();
  for (NodeId id : *order) {
    if (!graph.IsStep(id)) continue;
    if (auto s = ParseStateSentence(graph.node(id).text)) {
      auto it = state.objects.find(s->object);
      if (it != state.objects.end()) it->second = s->state;
    }
  }
  return AnswerValue{std::move(state)};
}

inline Result<AnswerValue> ExtractAnswer(const ReasoningGraph& graph) {
  if (IsScone(graph.task())) return ExtractWorldState(graph);
  const auto answer = graph.answer_node();
  if (!answer || !graph.Contains(*answer)) {
    return MakeError(ErrorCode::kMissingAnswerNode, "no \"The answer is\" sink");
  }
  return ParseAnswerText(graph.node(*answer).text, graph.task());
}

}  // namespace street

#endif  // STREET_GRAPH_HPP_
