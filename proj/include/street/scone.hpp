#ifndef STREET_SCONE_HPP_
#define STREET_SCONE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "street/codec.hpp"
#include "street/graph.hpp"
#include "street/result.hpp"
#include "street/task.hpp"

namespace street {

inline const std::vector<std::string>& ChemicalColors() {
  static const std::vector<std::string> kColors = {"green", "purple", "orange",
                                                   "red",   "yellow", "brown"};
  return kColors;
}

// Shirt and hat colours.
inline const std::vector<std::string>& ClothingColors() {
  static const std::vector<std::string> kColors = {"green",  "purple", "orange", "red",
                                                   "yellow", "brown",  "blue"};
  return kColors;
}

inline constexpr int kDefaultBeakers = 7;
inline constexpr int kDefaultBeakerCapacity = 4;
inline constexpr int kDefaultPositions = 10;
inline constexpr int kDefaultSlots = 5;

// Beakers hold stacks of units, bottom first.
struct AlchemyWorld {
  std::vector<std::vector<std::string>> beakers;
  int capacity = kDefaultBeakerCapacity;
  bool operator==(const AlchemyWorld&) const = default;
};

struct Person {
  std::string shirt;
  std::optional<std::string> hat;
  bool operator==(const Person&) const = default;
};

struct SceneWorld {
  std::vector<std::optional<Person>> positions;
  bool operator==(const SceneWorld&) const = default;
};

struct RemovedFigure {
  char figure = 'A';
  int slot = 0;
  bool operator==(const RemovedFigure&) const = default;
};

struct TangramsWorld {
  std::vector<std::optional<char>> slots;
  std::vector<RemovedFigure> removed;  // stack, most recent last
  bool operator==(const TangramsWorld&) const = default;
};

using SconeWorld = std::variant<AlchemyWorld, SceneWorld, TangramsWorld>;

// Object indices in actions are 1-based, as in the rendered text.
struct Drain {
  int beaker = 1;
  std::optional<int> amount;  // nullopt drains everything
};
struct Pour {
  int src = 1;
  int dst = 1;
  std::optional<int> amount;
};
struct Mix {
  int beaker = 1;
};

struct AppearTarget {
  enum class Kind { kAt, kLeftEnd, kRightEnd, kLeftOf, kRightOf };
  Kind kind = Kind::kAt;
  int position = 1;  // kAt: the position; kLeftOf / kRightOf: the reference
};
struct Appear {
  Person person;
  AppearTarget where;
};
struct Leave {
  int position = 1;
};
struct Move {
  int from = 1;
  int to = 1;
};
struct Swap {
  int i = 1;
  int j = 1;
};
struct Delete {
  int slot = 1;
};
struct AddBack {
  int slot = 1;
};

using SconeOp = std::variant<Drain, Pour, Mix, Appear, Leave, Move, Swap, Delete, AddBack>;

struct SconeAction {
  SconeOp op;
  // Replaces the canonical template text of the action TLU.
  std::optional<std::string> utterance;
};

// One rendered object whose state text differs after an action, with the
// objects the new state was computed from.
struct StateChange {
  int object = 1;
  std::string text;
  std::vector<int> reads;
};

struct Applied {
  SconeWorld world;
  std::vector<StateChange> changes;
};

namespace scone_internal {

inline std::string OrdinalSuffix(int k) {
  const int mod100 = k % 100;
  if (mod100 >= 11 && mod100 <= 13) return std::to_string(k) + "th";
  switch (k % 10) {
    case 1: return std::to_string(k) + "st";
    case 2: return std::to_string(k) + "nd";
    case 3: return std::to_string(k) + "rd";
    default: return std::to_string(k) + "th";
  }
}

inline std::string RenderBeaker(const std::vector<std::string>& units) {
  if (units.empty()) return "0 chemicals";
  std::vector<std::pair<int, std::string>> groups;
  for (const auto& u : units) {
    if (!groups.empty() && groups.back().second == u) {
      ++groups.back().first;
    } else {
      groups.emplace_back(1, u);
    }
  }
  std::string out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g) out += " and ";
    out += std::to_string(groups[g].first) + " " + groups[g].second;
  }
  return out + (groups.front().first == 1 ? " chemical" : " chemicals");
}

inline std::string RenderPerson(const std::optional<Person>& p) {
  if (!p) return "no person";
  return "person in " + p->shirt + " shirt and " + (p->hat ? *p->hat + " hat" : "no hat");
}

inline std::string WithArticle(const std::string& word) {
  const bool vowel = !word.empty() && std::string("aeiou").find(word[0]) != std::string::npos;
  return (vowel ? "an " : "a ") + word;
}

inline std::string DescribePerson(const Person& p) {
  return "a person in " + WithArticle(p.shirt) + " shirt and " +
         (p.hat ? WithArticle(*p.hat) + " hat" : "no hat");
}

template <typename W>
const W* As(const SconeWorld& world) {
  return std::get_if<W>(&world);
}

inline Error Invalid(std::string reason) {
  return MakeError(ErrorCode::kInvalidAction, std::move(reason));
}

inline bool InRange(int k, std::size_t n) { return k >= 1 && k <= static_cast<int>(n); }

}  // namespace scone_internal

inline std::size_t ObjectCount(const SconeWorld& world) {
  return std::visit(
      [](const auto& w) -> std::size_t {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, AlchemyWorld>) return w.beakers.size();
        if constexpr (std::is_same_v<W, SceneWorld>) return w.positions.size();
        if constexpr (std::is_same_v<W, TangramsWorld>) return w.slots.size();
      },
      world);
}

// "third beaker has 1 purple chemical", "position 5 has no person", ...
inline std::string RenderObject(const SconeWorld& world, int k) {
  using namespace scone_internal;
  if (const auto* a = As<AlchemyWorld>(world)) {
    return OrdinalWord(k) + " beaker has " + RenderBeaker(a->beakers[k - 1]);
  }
  if (const auto* s = As<SceneWorld>(world)) {
    return "position " + std::to_string(k) + " has " + RenderPerson(s->positions[k - 1]);
  }
  const auto& t = std::get<TangramsWorld>(world);
  const auto& slot = t.slots[k - 1];
  return "position " + std::to_string(k) + " has " +
         (slot ? std::string("figure ") + *slot : std::string("no figure"));
}

inline std::vector<std::string> RenderWorld(const SconeWorld& world) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= ObjectCount(world); ++k) {
    out.push_back(RenderObject(world, static_cast<int>(k)));
  }
  return out;
}

inline WorldState FinalState(const SconeWorld& world) {
  WorldState state;
  for (const auto& text : RenderWorld(world)) {
    if (auto s = ParseStateSentence(text)) state.objects.emplace(s->object, s->state);
  }
  return state;
}

inline Task TaskOf(const SconeWorld& world) {
  if (std::holds_alternative<AlchemyWorld>(world)) return Task::kSconeAlchemy;
  if (std::holds_alternative<SceneWorld>(world)) return Task::kSconeScene;
  return Task::kSconeTangrams;
}

// Canonical command text of an action.
inline std::string Utterance(const SconeOp& op) {
  using namespace scone_internal;
  return std::visit(
      [](const auto& a) -> std::string {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, Drain>) {
          if (!a.amount) return "throw out the " + OrdinalWord(a.beaker) + " beaker";
          return "drain " + std::to_string(*a.amount) + " from the " + OrdinalWord(a.beaker) +
                 " beaker";
        } else if constexpr (std::is_same_v<A, Pour>) {
          const std::string what =
              a.amount ? std::to_string(*a.amount) + " of the " : std::string("the ");
          return "pour " + what + OrdinalWord(a.src) + " beaker into the " +
                 OrdinalWord(a.dst) + " beaker";
        } else if constexpr (std::is_same_v<A, Mix>) {
          return "mix the " + OrdinalWord(a.beaker) + " beaker";
        } else if constexpr (std::is_same_v<A, Appear>) {
          std::string where;
          switch (a.where.kind) {
            case AppearTarget::Kind::kAt:
              where = "at position " + std::to_string(a.where.position);
              break;
            case AppearTarget::Kind::kLeftEnd: where = "on the left end"; break;
            case AppearTarget::Kind::kRightEnd: where = "on the right end"; break;
            case AppearTarget::Kind::kLeftOf:
              where = "on the left of position " + std::to_string(a.where.position);
              break;
            case AppearTarget::Kind::kRightOf:
              where = "on the right of position " + std::to_string(a.where.position);
              break;
          }
          return DescribePerson(a.person) + " appears " + where;
        } else if constexpr (std::is_same_v<A, Leave>) {
          return "the person at position " + std::to_string(a.position) + " leaves";
        } else if constexpr (std::is_same_v<A, Move>) {
          return "the person at position " + std::to_string(a.from) + " moves to position " +
                 std::to_string(a.to);
        } else if constexpr (std::is_same_v<A, Swap>) {
          return "swap the " + OrdinalSuffix(a.i) + " and " + OrdinalSuffix(a.j) + " figure";
        } else if constexpr (std::is_same_v<A, Delete>) {
          return "delete the " + OrdinalSuffix(a.slot) + " figure";
        } else {
          return "add the last deleted figure back at position " + std::to_string(a.slot);
        }
      },
      op);
}

namespace scone_internal {

inline Result<Applied> ApplyAlchemy(const AlchemyWorld& in, const SconeOp& op) {
  AlchemyWorld w = in;
  const std::size_t n = w.beakers.size();
  std::vector<std::pair<int, std::vector<int>>> touched;  // object, reads
  if (const auto* d = std::get_if<Drain>(&op)) {
    if (!InRange(d->beaker, n)) return Invalid("no such beaker");
    auto& b = w.beakers[d->beaker - 1];
    const int amount = d->amount.value_or(static_cast<int>(b.size()));
    if (b.empty()) return Invalid("drain from empty beaker");
    if (amount < 1 || amount > static_cast<int>(b.size())) return Invalid("bad drain amount");
    b.resize(b.size() - amount);
    touched.push_back({d->beaker, {d->beaker}});
  } else if (const auto* p = std::get_if<Pour>(&op)) {
    if (!InRange(p->src, n) || !InRange(p->dst, n)) return Invalid("no such beaker");
    if (p->src == p->dst) return Invalid("pour into itself");
    auto& src = w.beakers[p->src - 1];
    auto& dst = w.beakers[p->dst - 1];
    if (src.empty()) return Invalid("pour from empty beaker");
    const int amount = p->amount.value_or(static_cast<int>(src.size()));
    if (amount < 1 || amount > static_cast<int>(src.size())) return Invalid("bad pour amount");
    if (static_cast<int>(dst.size()) + amount > w.capacity) return Invalid("beaker overflows");
    dst.insert(dst.end(), src.end() - amount, src.end());
    src.resize(src.size() - amount);
    touched.push_back({p->dst, {p->src, p->dst}});
    touched.push_back({p->src, {p->src}});
  } else if (const auto* m = std::get_if<Mix>(&op)) {
    if (!InRange(m->beaker, n)) return Invalid("no such beaker");
    auto& b = w.beakers[m->beaker - 1];
    if (b.empty()) return Invalid("mix empty beaker");
    if (std::set<std::string>(b.begin(), b.end()).size() > 1) {
      std::fill(b.begin(), b.end(), std::string("brown"));
    }
    touched.push_back({m->beaker, {m->beaker}});
  } else {
    return Invalid("not an alchemy action");
  }
  Applied out{w, {}};
  for (auto& [object, reads] : touched) {
    std::string text = RenderObject(out.world, object);
    if (text != RenderObject(SconeWorld(in), object)) {
      out.changes.push_back({object, std::move(text), std::move(reads)});
    }
  }
  return out;
}

inline Result<int> ResolveAppear(const SceneWorld& w, const AppearTarget& where) {
  const int n = static_cast<int>(w.positions.size());
  switch (where.kind) {
    case AppearTarget::Kind::kAt: return where.position;
    case AppearTarget::Kind::kLeftEnd: return 1;
    case AppearTarget::Kind::kRightEnd: return n;
    case AppearTarget::Kind::kLeftOf:
    case AppearTarget::Kind::kRightOf:
      if (!InRange(where.position, w.positions.size()) || !w.positions[where.position - 1]) {
        return Invalid("reference position is empty");
      }
      return where.position + (where.kind == AppearTarget::Kind::kLeftOf ? -1 : 1);
  }
  return Invalid("bad appear target");
}

inline Result<Applied> ApplyScene(const SceneWorld& in, const SconeOp& op) {
  SceneWorld w = in;
  const std::size_t n = w.positions.size();
  std::vector<std::pair<int, std::vector<int>>> touched;
  if (const auto* a = std::get_if<Appear>(&op)) {
    auto at = ResolveAppear(w, a->where);
    if (!at.ok()) return at.error();
    if (!InRange(*at, n)) return Invalid("no such position");
    if (w.positions[*at - 1]) return Invalid("position occupied");
    w.positions[*at - 1] = a->person;
    touched.push_back({*at, {*at}});
  } else if (const auto* l = std::get_if<Leave>(&op)) {
    if (!InRange(l->position, n)) return Invalid("no such position");
    if (!w.positions[l->position - 1]) return Invalid("nobody to leave");
    w.positions[l->position - 1].reset();
    touched.push_back({l->position, {l->position}});
  } else if (const auto* m = std::get_if<Move>(&op)) {
    if (!InRange(m->from, n) || !InRange(m->to, n)) return Invalid("no such position");
    if (m->from == m->to) return Invalid("move to same position");
    if (!w.positions[m->from - 1]) return Invalid("nobody to move");
    if (w.positions[m->to - 1]) return Invalid("target occupied");
    w.positions[m->to - 1] = std::move(w.positions[m->from - 1]);
    w.positions[m->from - 1].reset();
    touched.push_back({m->to, {m->to, m->from}});
    touched.push_back({m->from, {m->from}});
  } else {
    return Invalid("not a scene action");
  }
  Applied out{w, {}};
  for (auto& [object, reads] : touched) {
    out.changes.push_back({object, RenderObject(out.world, object), std::move(reads)});
  }
  return out;
}

inline Result<Applied> ApplyTangrams(const TangramsWorld& in, const SconeOp& op) {
  TangramsWorld w = in;
  const std::size_t n = w.slots.size();
  std::vector<std::pair<int, std::vector<int>>> touched;
  if (const auto* s = std::get_if<Swap>(&op)) {
    if (!InRange(s->i, n) || !InRange(s->j, n)) return Invalid("no such position");
    if (s->i == s->j) return Invalid("swap with itself");
    if (!w.slots[s->i - 1] || !w.slots[s->j - 1]) return Invalid("swap with empty position");
    std::swap(w.slots[s->i - 1], w.slots[s->j - 1]);
    touched.push_back({s->i, {s->i}});
    touched.push_back({s->j, {s->j}});
  } else if (const auto* d = std::get_if<Delete>(&op)) {
    if (!InRange(d->slot, n)) return Invalid("no such position");
    if (!w.slots[d->slot - 1]) return Invalid("nothing to delete");
    w.removed.push_back({*w.slots[d->slot - 1], d->slot});
    w.slots[d->slot - 1].reset();
    touched.push_back({d->slot, {d->slot}});
  } else if (const auto* a = std::get_if<AddBack>(&op)) {
    if (!InRange(a->slot, n)) return Invalid("no such position");
    if (w.removed.empty()) return Invalid("nothing to add back");
    if (w.slots[a->slot - 1]) return Invalid("position occupied");
    w.slots[a->slot - 1] = w.removed.back().figure;
    w.removed.pop_back();
    touched.push_back({a->slot, {a->slot}});
  } else {
    return Invalid("not a tangrams action");
  }
  Applied out{w, {}};
  for (auto& [object, reads] : touched) {
    out.changes.push_back({object, RenderObject(out.world, object), std::move(reads)});
  }
  return out;
}

}  // namespace scone_internal

inline Result<Applied> Apply(const SconeWorld& world, const SconeOp& op) {
  using namespace scone_internal;
  if (const auto* a = As<AlchemyWorld>(world)) return ApplyAlchemy(*a, op);
  if (const auto* s = As<SceneWorld>(world)) return ApplyScene(*s, op);
  return ApplyTangrams(std::get<TangramsWorld>(world), op);
}

struct SconeTrace {
  SconeWorld initial;
  std::vector<SconeAction> actions;
};

// Gold reasoning graph of a trace: state TLUs, then one TLU per action, then
// one step per changed object reading {action} plus the latest state of each
// object the change depends on.
inline Result<ReasoningGraph> EmitSteps(const SconeTrace& trace) {
  QaComponents components;
  components.context = RenderWorld(trace.initial);
  const int objects = static_cast<int>(components.context.size());
  std::vector<NodeId> latest;
  for (int k = 1; k <= objects; ++k) latest.emplace_back(k);
  std::vector<StepSpec> steps;
  SconeWorld world = trace.initial;
  int next_id = objects + static_cast<int>(trace.actions.size()) + 1;
  for (std::size_t a = 0; a < trace.actions.size(); ++a) {
    const SconeAction& action = trace.actions[a];
    components.question.push_back(action.utterance.value_or(Utterance(action.op)));
    auto applied = Apply(world, action.op);
    if (!applied.ok()) {
      return MakeError(ErrorCode::kInvalidAction,
                       "action " + std::to_string(a + 1) + ": " + applied.error().message);
    }
    const NodeId action_id(objects + static_cast<int>(a) + 1);
    std::vector<std::pair<int, NodeId>> updates;
    for (const StateChange& change : applied->changes) {
      StepSpec step;
      step.premises.push_back(action_id);
      for (int r : change.reads) step.premises.push_back(latest[r - 1]);
      std::sort(step.premises.begin(), step.premises.end());
      step.text = change.text;
      steps.push_back(std::move(step));
      updates.emplace_back(change.object, NodeId(next_id++));
    }
    for (const auto& [object, id] : updates) latest[object - 1] = id;
    world = std::move(applied->world);
  }
  components.answer = FinalState(world);
  return Build(TaskOf(trace.initial), components, steps);
}

inline Result<SconeWorld> RunTrace(const SconeTrace& trace) {
  SconeWorld world = trace.initial;
  for (const auto& action : trace.actions) {
    auto applied = Apply(world, action.op);
    if (!applied.ok()) return applied.error();
    world = std::move(applied->world);
  }
  return world;
}

// Seeded generator. Draws are platform independent: mt19937_64 output mapped
// to [0, n) by 128-bit multiply-shift.
class SconeRng {
 public:
  explicit SconeRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t Below(std::size_t n) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(engine_()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct SconeSizes {
  int beakers = kDefaultBeakers;
  int capacity = kDefaultBeakerCapacity;
  int positions = kDefaultPositions;
  int slots = kDefaultSlots;
};

inline SconeWorld RandomWorld(Task task, SconeRng& rng, const SconeSizes& sizes = {}) {
  if (task == Task::kSconeAlchemy) {
    AlchemyWorld w;
    w.capacity = sizes.capacity;
    const std::vector<std::string> colors(ChemicalColors().begin(), ChemicalColors().end() - 1);
    int total = 0;
    for (int b = 0; b < sizes.beakers; ++b) {
      const auto count = static_cast<int>(rng.Below(sizes.capacity + 1));
      w.beakers.emplace_back(count, rng.Pick(colors));
      total += count;
    }
    if (total == 0) w.beakers[rng.Below(w.beakers.size())].push_back(rng.Pick(colors));
    return w;
  }
  if (task == Task::kSconeScene) {
    SceneWorld w;
    for (int k = 0; k < sizes.positions; ++k) {
      if (rng.Below(3) == 0) {
        Person p{rng.Pick(ClothingColors()), std::nullopt};
        if (rng.Below(2) == 0) p.hat = rng.Pick(ClothingColors());
        w.positions.emplace_back(std::move(p));
      } else {
        w.positions.emplace_back();
      }
    }
    return w;
  }
  TangramsWorld w;
  std::vector<char> figures;
  for (int k = 0; k < sizes.slots; ++k) figures.push_back(static_cast<char>('A' + k));
  for (std::size_t k = figures.size(); k > 1; --k) std::swap(figures[k - 1], figures[rng.Below(k)]);
  for (char f : figures) w.slots.emplace_back(f);
  return w;
}

// Every action of each kind that is valid in `world` and changes it, grouped by
// kind in a fixed order.
inline std::vector<std::vector<SconeOp>> CandidateActions(const SconeWorld& world) {
  std::vector<std::vector<SconeOp>> kinds;
  if (const auto* a = std::get_if<AlchemyWorld>(&world)) {
    const int n = static_cast<int>(a->beakers.size());
    int total = 0;
    for (const auto& b : a->beakers) total += static_cast<int>(b.size());
    std::vector<SconeOp> drains, pours, mixes;
    for (int b = 1; b <= n; ++b) {
      const int size = static_cast<int>(a->beakers[b - 1].size());
      for (int k = 1; k <= size && k < total; ++k) {
        drains.push_back(Drain{b, k == size ? std::nullopt : std::optional<int>(k)});
      }
      const auto& units = a->beakers[b - 1];
      if (std::set<std::string>(units.begin(), units.end()).size() > 1) mixes.push_back(Mix{b});
      for (int d = 1; d <= n; ++d) {
        if (d == b) continue;
        const int room = a->capacity - static_cast<int>(a->beakers[d - 1].size());
        for (int k = 1; k <= size && k <= room; ++k) {
          pours.push_back(Pour{b, d, k == size ? std::nullopt : std::optional<int>(k)});
        }
      }
    }
    kinds = {std::move(drains), std::move(pours), std::move(mixes)};
  } else if (const auto* s = std::get_if<SceneWorld>(&world)) {
    const int n = static_cast<int>(s->positions.size());
    std::vector<SconeOp> appears, leaves, moves;
    for (int k = 1; k <= n; ++k) {
      if (!s->positions[k - 1]) {
        for (const auto& shirt : ClothingColors()) {
          appears.push_back(Appear{Person{shirt, std::nullopt}, {AppearTarget::Kind::kAt, k}});
          for (const auto& hat : ClothingColors()) {
            appears.push_back(Appear{Person{shirt, hat}, {AppearTarget::Kind::kAt, k}});
          }
        }
        continue;
      }
      leaves.push_back(Leave{k});
      for (int t = 1; t <= n; ++t) {
        if (!s->positions[t - 1]) moves.push_back(Move{k, t});
      }
    }
    kinds = {std::move(appears), std::move(leaves), std::move(moves)};
  } else {
    const auto& t = std::get<TangramsWorld>(world);
    const int n = static_cast<int>(t.slots.size());
    std::vector<SconeOp> swaps, deletes, adds;
    for (int i = 1; i <= n; ++i) {
      if (!t.slots[i - 1]) {
        if (!t.removed.empty()) adds.push_back(AddBack{i});
        continue;
      }
      deletes.push_back(Delete{i});
      for (int j = i + 1; j <= n; ++j) {
        if (t.slots[j - 1]) swaps.push_back(Swap{i, j});
      }
    }
    kinds = {std::move(swaps), std::move(deletes), std::move(adds)};
  }
  std::erase_if(kinds, [](const auto& k) { return k.empty(); });
  return kinds;
}

inline SconeOp RandomAction(const SconeWorld& world, SconeRng& rng) {
  const auto kinds = CandidateActions(world);
  return rng.Pick(rng.Pick(kinds));
}

struct GeneratedExample {
  SconeTrace trace;
  ReasoningGraph gold;
  LinearizedExample example;
};

// Seeded random world plus `n_actions` valid, state-changing actions.
inline GeneratedExample Generate(std::uint64_t seed, Task task, int n_actions,
                                 const SconeSizes& sizes = {}) {
  SconeRng rng(seed);
  SconeTrace trace{RandomWorld(task, rng, sizes), {}};
  SconeWorld world = trace.initial;
  for (int a = 0; a < n_actions; ++a) {
    SconeOp op = RandomAction(world, rng);
    world = std::move(Apply(world, op).value().world);
    trace.actions.push_back(SconeAction{std::move(op), std::nullopt});
  }
  ReasoningGraph gold = EmitSteps(trace).value();
  LinearizedExample example = Serialize(gold);
  return GeneratedExample{std::move(trace), std::move(gold), std::move(example)};
}

// Number of reasoning steps the action contributes when it changes the world.
inline int StepsPerAction(const SconeOp& op) {
  return std::visit(
      [](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        return std::is_same_v<A, Pour> || std::is_same_v<A, Move> || std::is_same_v<A, Swap>
                   ? 2
                   : 1;
      },
      op);
}

}  // namespace street

#endif  // STREET_SCONE_HPP_
