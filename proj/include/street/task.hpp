#ifndef STREET_TASK_HPP_
#define STREET_TASK_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace street {

enum class Task {
  kArc,
  kSconeAlchemy,
  kSconeScene,
  kSconeTangrams,
  kGsm8k,
  kAquaRat,
  kArLsat,
};

enum class AnswerType { kMultipleChoice, kNumber, kStatePrediction };

inline constexpr std::array<Task, 7> kAllTasks = {
    Task::kArc,   Task::kSconeAlchemy, Task::kSconeScene, Task::kSconeTangrams,
    Task::kGsm8k, Task::kAquaRat,      Task::kArLsat};

inline bool IsScone(Task task) {
  return task == Task::kSconeAlchemy || task == Task::kSconeScene ||
         task == Task::kSconeTangrams;
}

inline AnswerType AnswerTypeOf(Task task) {
  if (IsScone(task)) return AnswerType::kStatePrediction;
  if (task == Task::kGsm8k) return AnswerType::kNumber;
  return AnswerType::kMultipleChoice;
}

// Number of answer options for multiple-choice tasks, 0 otherwise.
inline int OptionCount(Task task) {
  switch (task) {
    case Task::kArc: return 4;
    case Task::kAquaRat:
    case Task::kArLsat: return 5;
    default: return 0;
  }
}

// Tag used in record files.
inline std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kArc: return "ARC";
    case Task::kSconeAlchemy: return "SCONE-alchemy";
    case Task::kSconeScene: return "SCONE-scene";
    case Task::kSconeTangrams: return "SCONE-tangrams";
    case Task::kGsm8k: return "GSM8K";
    case Task::kAquaRat: return "AQUA-RAT";
    case Task::kArLsat: return "AR-LSAT";
  }
  return "?";
}

// Row label used in reports; SCONE sub-tasks share one row.
inline std::string_view TaskGroupName(Task task) {
  return IsScone(task) ? "SCONE" : TaskName(task);
}

inline constexpr std::array<std::string_view, 5> kTaskGroupOrder = {
    "ARC", "SCONE", "GSM8K", "AQUA-RAT", "AR-LSAT"};

inline std::optional<Task> ParseTask(std::string_view name) {
  for (Task task : kAllTasks) {
    if (TaskName(task) == name) return task;
  }
  if (name == "alchemy") return Task::kSconeAlchemy;
  if (name == "scene") return Task::kSconeScene;
  if (name == "tangrams") return Task::kSconeTangrams;
  return std::nullopt;
}

}  // namespace street

#endif  // STREET_TASK_HPP_
