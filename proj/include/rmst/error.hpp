#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rmst {

enum class ErrorCode {
  kDisconnectedGraph,
  kTooManyTrees,
  kInvalidGraph,
  kNotASpanningTree,
  kInvalidTwoStageSolution,
  kSchemaError,
  kRowLengthMismatch,
  kNumericalFailure,
  kNegativeCosts,
  kParamsInadmissible,
  kIncompatibleSolution,
  kInstanceTooLarge,
  kScenarioBlowup,
  kLabelingNotTotal,
  kAssignmentDoesNotSatisfy,
  kNotACover,
  kSolutionUsesForbiddenEdge,
  kParamsInfeasible,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rmst
