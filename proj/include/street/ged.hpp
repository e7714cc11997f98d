#ifndef STREET_GED_HPP_
#define STREET_GED_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "street/graph.hpp"
#include "street/result.hpp"
#include "street/similarity.hpp"

namespace street {

// The part of a reasoning graph that takes part in comparison. Steps without
// antecedents are dropped together with their edges; the answer node always
// stays. Premises count as nodes only when an edge of the view touches them.
struct ComparisonView {
  std::vector<NodeId> steps;  // topological order
  std::set<NodeId> premises;
  std::set<Edge> edges;
  std::optional<NodeId> answer;

  std::size_t NodeCount() const { return steps.size() + premises.size(); }
  std::size_t Size() const { return NodeCount() + edges.size(); }
  bool HasStep(NodeId id) const {
    return std::find(steps.begin(), steps.end(), id) != steps.end();
  }
};

inline ComparisonView MakeComparisonView(const ReasoningGraph& graph) {
  ComparisonView view;
  view.answer = graph.answer_node();
  std::set<NodeId> dropped;
  for (NodeId id : graph.StepIds()) {
    if (graph.Premises(id).empty() && id != view.answer) dropped.insert(id);
  }
  auto order = TopologicalOrder(graph);
  const std::vector<NodeId> ids = order.ok() ? *order : graph.StepIds();
  for (NodeId id : ids) {
    if (graph.IsStep(id) && !dropped.count(id)) view.steps.push_back(id);
  }
  for (const Edge& e : graph.edges()) {
    if (dropped.count(e.from) || dropped.count(e.to)) continue;
    view.edges.insert(e);
    if (!graph.IsStep(e.from)) view.premises.insert(e.from);
    if (!graph.IsStep(e.to)) view.premises.insert(e.to);
  }
  return view;
}

// True when both graphs yield an answer and the answers are equal.
inline bool AnswersAgree(const ReasoningGraph& pred, const ReasoningGraph& gold) {
  const auto gold_answer = ExtractAnswer(gold);
  const auto pred_answer = ExtractAnswer(pred);
  return gold_answer.ok() && pred_answer.ok() && *gold_answer == *pred_answer;
}

// Edit cost that may be infinite (wrong answer).
class EditCost {
 public:
  constexpr EditCost() = default;
  constexpr explicit EditCost(long value) : value_(value) {}
  static constexpr EditCost Infinite() {
    EditCost out;
    out.infinite_ = true;
    return out;
  }
  constexpr bool is_infinite() const { return infinite_; }
  constexpr long value() const { return value_; }
  bool operator==(const EditCost&) const = default;

  std::string ToString() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  long value_ = 0;
  bool infinite_ = false;
};

struct NormTerms {
  std::size_t pred = 0;  // |N_p| + |E_p|
  std::size_t gold = 0;  // |N_g| + |E_g|
};

struct GedOutcome {
  EditCost delta;
  std::map<NodeId, NodeId> mapping;  // pred step -> gold step
  bool exact = false;
  NormTerms norm_terms;
};

inline constexpr int kDefaultExactBound = 6;
inline constexpr long kDefaultApproxBudget = 20000;

struct GedOptions {
  int exact_bound = kDefaultExactBound;  // max comparison steps per side
  long approx_budget = kDefaultApproxBudget;
};

namespace ged_internal {

inline constexpr int kUnmatched = -1;

// Both graphs reduced to index form. Premises are shared anchors identified by
// id; pred step i maps to gold step image[i] or kUnmatched.
class Problem {
 public:
  Problem(const ReasoningGraph& pred, const ReasoningGraph& gold,
          const SimilarityPolicy& sigma)
      : pred_view_(MakeComparisonView(pred)), gold_view_(MakeComparisonView(gold)) {
    norm_.pred = pred_view_.Size();
    norm_.gold = gold_view_.Size();
    answers_agree_ = AnswersAgree(pred, gold);
    p_steps_ = pred_view_.steps;
    g_steps_ = gold_view_.steps;
    for (std::size_t i = 0; i < p_steps_.size(); ++i) p_index_[p_steps_[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < g_steps_.size(); ++j) g_index_[g_steps_[j]] = static_cast<int>(j);
    equivalent_.assign(p_steps_.size(), std::vector<char>(g_steps_.size(), 0));
    for (std::size_t i = 0; i < p_steps_.size(); ++i) {
      for (std::size_t j = 0; j < g_steps_.size(); ++j) {
        equivalent_[i][j] =
            sigma.Equivalent(pred.node(p_steps_[i]).text, gold.node(g_steps_[j]).text);
      }
    }
    if (pred_view_.answer && gold_view_.answer && answers_agree_) {
      forced_pred_ = p_index_.at(*pred_view_.answer);
      forced_gold_ = g_index_.at(*gold_view_.answer);
    }
    std::vector<NodeId> diff;
    std::set_symmetric_difference(pred_view_.premises.begin(), pred_view_.premises.end(),
                                  gold_view_.premises.begin(), gold_view_.premises.end(),
                                  std::back_inserter(diff));
    premise_cost_ = static_cast<long>(diff.size());
    for (const Edge& e : pred_view_.edges) p_edges_.push_back(e);
  }

  const ComparisonView& pred_view() const { return pred_view_; }
  const ComparisonView& gold_view() const { return gold_view_; }
  NormTerms norm() const { return norm_; }
  bool answers_agree() const { return answers_agree_; }
  std::size_t pred_size() const { return p_steps_.size(); }
  std::size_t gold_size() const { return g_steps_.size(); }
  int forced_pred() const { return forced_pred_; }
  int forced_gold() const { return forced_gold_; }
  NodeId pred_step(int i) const { return p_steps_[i]; }
  NodeId gold_step(int j) const { return g_steps_[j]; }
  bool equivalent(int i, int j) const { return equivalent_[i][j] != 0; }
  long premise_cost() const { return premise_cost_; }
  const std::vector<Edge>& pred_edges() const { return p_edges_; }
  std::size_t gold_edge_count() const { return gold_view_.edges.size(); }

  // Pred step index of `id`, or -1 for premises.
  int PredIndex(NodeId id) const {
    auto it = p_index_.find(id);
    return it == p_index_.end() ? -1 : it->second;
  }
  int GoldIndex(NodeId id) const {
    auto it = g_index_.find(id);
    return it == g_index_.end() ? -1 : it->second;
  }

  // Gold-side image of a pred node under `image`, if any.
  std::optional<NodeId> Image(NodeId id, const std::vector<int>& image) const {
    const int i = PredIndex(id);
    if (i < 0) return id;
    if (image[i] == kUnmatched) return std::nullopt;
    return g_steps_[image[i]];
  }

  bool Preserved(const Edge& e, const std::vector<int>& image) const {
    const auto from = Image(e.from, image);
    const auto to = Image(e.to, image);
    return from && to && gold_view_.edges.count({*from, *to});
  }

  long NodeCost(int i, int j) const {
    return j == kUnmatched ? 1 : (equivalent(i, j) ? 0 : 1);
  }

  long Cost(const std::vector<int>& image) const {
    long cost = premise_cost_;
    std::vector<char> used(g_steps_.size(), 0);
    for (std::size_t i = 0; i < image.size(); ++i) {
      cost += NodeCost(static_cast<int>(i), image[i]);
      if (image[i] != kUnmatched) used[image[i]] = 1;
    }
    cost += static_cast<long>(std::count(used.begin(), used.end(), 0));
    long preserved = 0;
    for (const Edge& e : p_edges_) preserved += Preserved(e, image) ? 1 : 0;
    return cost + static_cast<long>(p_edges_.size() + gold_edge_count()) - 2 * preserved;
  }

  std::map<NodeId, NodeId> Mapping(const std::vector<int>& image) const {
    std::map<NodeId, NodeId> out;
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i] != kUnmatched) out[p_steps_[i]] = g_steps_[image[i]];
    }
    return out;
  }

 private:
  ComparisonView pred_view_;
  ComparisonView gold_view_;
  NormTerms norm_;
  bool answers_agree_ = false;
  std::vector<NodeId> p_steps_;
  std::vector<NodeId> g_steps_;
  std::map<NodeId, int> p_index_;
  std::map<NodeId, int> g_index_;
  std::vector<std::vector<char>> equivalent_;
  int forced_pred_ = -1;
  int forced_gold_ = -1;
  long premise_cost_ = 0;
  std::vector<Edge> p_edges_;
};

inline std::map<NodeId, int> Depths(const ReasoningGraph& graph, const ComparisonView& view) {
  std::map<NodeId, int> depth;
  for (NodeId id : view.steps) {
    int d = 0;
    for (const Edge& e : view.edges) {
      if (e.to == id) {
        auto it = depth.find(e.from);
        d = std::max(d, it == depth.end() ? 0 : it->second);
      }
    }
    depth[id] = d + 1;
  }
  (void)graph;
  return depth;
}

// Greedy seeding followed by first-improvement local search.
inline std::pair<std::vector<int>, long> Approximate(const Problem& problem,
                                                     const ReasoningGraph& pred,
                                                     const ReasoningGraph& gold,
                                                     long budget) {
  const int np = static_cast<int>(problem.pred_size());
  const int ng = static_cast<int>(problem.gold_size());
  std::vector<int> image(np, kUnmatched);
  std::vector<char> used(ng, 0);
  if (problem.forced_pred() >= 0) {
    image[problem.forced_pred()] = problem.forced_gold();
    used[problem.forced_gold()] = 1;
  }
  const auto pred_depth = Depths(pred, problem.pred_view());
  const auto gold_depth = Depths(gold, problem.gold_view());
  auto in_edges = [](const ComparisonView& view, NodeId id) {
    std::set<NodeId> out;
    for (const Edge& e : view.edges) {
      if (e.to == id) out.insert(e.from);
    }
    return out;
  };
  for (int i = 0; i < np; ++i) {
    if (i == problem.forced_pred()) continue;
    const NodeId p = problem.pred_step(i);
    std::set<NodeId> translated;
    for (NodeId x : in_edges(problem.pred_view(), p)) {
      if (auto img = problem.Image(x, image)) translated.insert(*img);
    }
    int best = kUnmatched;
    std::tuple<int, int, int> best_key;
    for (int j = 0; j < ng; ++j) {
      if (used[j]) continue;
      const NodeId g = problem.gold_step(j);
      const auto gold_premises = in_edges(problem.gold_view(), g);
      int overlap = 0;
      for (NodeId x : translated) overlap += gold_premises.count(x) ? 1 : 0;
      const std::tuple<int, int, int> key{
          problem.equivalent(i, j) ? 0 : 1, -overlap,
          std::abs(pred_depth.at(p) - gold_depth.at(g))};
      if (best == kUnmatched || key < best_key) {
        best = j;
        best_key = key;
      }
    }
    if (best != kUnmatched && (std::get<0>(best_key) == 0 || std::get<1>(best_key) < 0)) {
      image[i] = best;
      used[best] = 1;
    }
  }
  long cost = problem.Cost(image);
  long expansions = 0;
  bool improved = true;
  while (improved && expansions < budget) {
    improved = false;
    for (int i = 0; i < np && !improved && expansions < budget; ++i) {
      if (i == problem.forced_pred()) continue;
      auto try_image = [&](std::vector<int> candidate) {
        ++expansions;
        const long c = problem.Cost(candidate);
        if (c < cost) {
          cost = c;
          image = std::move(candidate);
          improved = true;
        }
      };
      std::vector<char> taken(ng, 0);
      for (int v : image) {
        if (v != kUnmatched) taken[v] = 1;
      }
      for (int j = 0; j < ng && !improved && expansions < budget; ++j) {
        if (taken[j]) continue;
        auto candidate = image;
        candidate[i] = j;
        try_image(std::move(candidate));
      }
      if (!improved && image[i] != kUnmatched && expansions < budget) {
        auto candidate = image;
        candidate[i] = kUnmatched;
        try_image(std::move(candidate));
      }
      for (int k = 0; k < np && !improved && expansions < budget; ++k) {
        if (k == i || k == problem.forced_pred() || image[k] == image[i]) continue;
        auto candidate = image;
        std::swap(candidate[i], candidate[k]);
        try_image(std::move(candidate));
      }
    }
  }
  return {std::move(image), cost};
}

// Depth-first branch and bound over partial injections, pred steps taken in
// topological order. Every pred edge is scored when its later endpoint is
// assigned.
class ExactSearch {
 public:
  explicit ExactSearch(const Problem& problem) : problem_(problem) {
    const int np = static_cast<int>(problem.pred_size());
    for (int i = 0; i < np; ++i) {
      if (i != problem.forced_pred()) order_.push_back(i);
    }
    edges_at_.assign(order_.size(), {});
    std::vector<int> position(np, -1);
    for (std::size_t k = 0; k < order_.size(); ++k) position[order_[k]] = static_cast<int>(k);
    for (const Edge& e : problem.pred_edges()) {
      const int a = problem.PredIndex(e.from);
      const int b = problem.PredIndex(e.to);
      const int pa = a < 0 ? -1 : position[a];
      const int pb = b < 0 ? -1 : position[b];
      const int at = std::max(pa, pb);
      if (at < 0) {
        initial_edges_.push_back(e);
      } else {
        edges_at_[at].push_back(e);
      }
    }
    remaining_edges_.assign(order_.size() + 1, 0);
    for (int k = static_cast<int>(order_.size()) - 1; k >= 0; --k) {
      remaining_edges_[k] = remaining_edges_[k + 1] + static_cast<long>(edges_at_[k].size());
    }
  }

  std::pair<std::vector<int>, long> Run(std::vector<int> seed, long seed_cost) {
    best_image_ = std::move(seed);
    best_cost_ = seed_cost;
    image_.assign(problem_.pred_size(), kUnmatched);
    used_.assign(problem_.gold_size(), 0);
    long preserved = 0;
    long node_cost = problem_.premise_cost();
    if (problem_.forced_pred() >= 0) {
      image_[problem_.forced_pred()] = problem_.forced_gold();
      used_[problem_.forced_gold()] = 1;
      node_cost += problem_.NodeCost(problem_.forced_pred(), problem_.forced_gold());
    }
    for (const Edge& e : initial_edges_) preserved += problem_.Preserved(e, image_) ? 1 : 0;
    Search(0, node_cost, preserved);
    return {best_image_, best_cost_};
  }

 private:
  long FreeGold() const {
    return static_cast<long>(std::count(used_.begin(), used_.end(), 0));
  }

  void Search(std::size_t k, long node_cost, long preserved) {
    const long edge_total =
        static_cast<long>(problem_.pred_edges().size() + problem_.gold_edge_count());
    if (k == order_.size()) {
      const long cost = node_cost + FreeGold() + edge_total - 2 * preserved;
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_image_ = image_;
      }
      return;
    }
    const long remaining_pred = static_cast<long>(order_.size() - k);
    const long future = std::min(remaining_edges_[k],
                                 static_cast<long>(problem_.gold_edge_count()) - preserved);
    const long bound = node_cost + std::max(0L, FreeGold() - remaining_pred) + edge_total -
                       2 * (preserved + future);
    if (bound >= best_cost_) return;
    const int i = order_[k];
    const int ng = static_cast<int>(problem_.gold_size());
    for (int j = 0; j <= ng; ++j) {
      const int target = j == ng ? kUnmatched : j;
      if (target != kUnmatched && used_[target]) continue;
      image_[i] = target;
      if (target != kUnmatched) used_[target] = 1;
      long kept = 0;
      for (const Edge& e : edges_at_[k]) kept += problem_.Preserved(e, image_) ? 1 : 0;
      Search(k + 1, node_cost + problem_.NodeCost(i, target), preserved + kept);
      if (target != kUnmatched) used_[target] = 0;
      image_[i] = kUnmatched;
    }
  }

  const Problem& problem_;
  std::vector<int> order_;
  std::vector<Edge> initial_edges_;
  std::vector<std::vector<Edge>> edges_at_;
  std::vector<long> remaining_edges_;
  std::vector<int> image_;
  std::vector<char> used_;
  std::vector<int> best_image_;
  long best_cost_ = 0;
};

inline GedOutcome InfiniteOutcome(const Problem& problem, bool exact) {
  GedOutcome out;
  out.delta = EditCost::Infinite();
  out.exact = exact;
  out.norm_terms = problem.norm();
  return out;
}

}  // namespace ged_internal

// Unit-cost graph edit distance with premises anchored by id, solved exactly.
// Fails with ExactnessBoundExceeded when either side has more than
// `exact_bound` comparison steps.
inline Result<GedOutcome> ExactGed(const ReasoningGraph& pred, const ReasoningGraph& gold,
                                   const SimilarityPolicy& sigma,
                                   int exact_bound = kDefaultExactBound) {
  const ged_internal::Problem problem(pred, gold, sigma);
  if (problem.pred_size() > static_cast<std::size_t>(exact_bound) ||
      problem.gold_size() > static_cast<std::size_t>(exact_bound)) {
    return MakeError(ErrorCode::kExactnessBoundExceeded,
                     std::to_string(problem.pred_size()) + "+" +
                         std::to_string(problem.gold_size()) + " steps");
  }
  if (!problem.answers_agree()) return ged_internal::InfiniteOutcome(problem, true);
  auto [seed, seed_cost] =
      ged_internal::Approximate(problem, pred, gold, kDefaultApproxBudget);
  auto [image, cost] = ged_internal::ExactSearch(problem).Run(std::move(seed), seed_cost);
  GedOutcome out;
  out.delta = EditCost(cost);
  out.mapping = problem.Mapping(image);
  out.exact = true;
  out.norm_terms = problem.norm();
  return out;
}

// Upper bound on the exact distance: premise-anchored greedy assignment ranked
// by (σ verdict, mapped-premise overlap, depth distance, gold id), then local
// search (reassign, unmatch, swap) for at most `budget` cost evaluations.
inline GedOutcome ApproxGed(const ReasoningGraph& pred, const ReasoningGraph& gold,
                            const SimilarityPolicy& sigma,
                            long budget = kDefaultApproxBudget) {
  const ged_internal::Problem problem(pred, gold, sigma);
  if (!problem.answers_agree()) return ged_internal::InfiniteOutcome(problem, false);
  auto [image, cost] = ged_internal::Approximate(problem, pred, gold, budget);
  GedOutcome out;
  out.delta = EditCost(cost);
  out.mapping = problem.Mapping(image);
  out.exact = false;
  out.norm_terms = problem.norm();
  return out;
}

// Exact when both sides fit the bound, approximate otherwise.
inline GedOutcome ComputeGed(const ReasoningGraph& pred, const ReasoningGraph& gold,
                             const SimilarityPolicy& sigma, const GedOptions& options = {}) {
  auto exact = ExactGed(pred, gold, sigma, options.exact_bound);
  if (exact.ok()) return std::move(exact).value();
  return ApproxGed(pred, gold, sigma, options.approx_budget);
}

}  // namespace street

#endif  // STREET_GED_HPP_
