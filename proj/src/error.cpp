#include "rmst/error.hpp"

namespace rmst {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kTooManyTrees: return "TooManyTrees";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kNotASpanningTree: return "NotASpanningTree";
    case ErrorCode::kInvalidTwoStageSolution: return "InvalidTwoStageSolution";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kRowLengthMismatch: return "RowLengthMismatch";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kNegativeCosts: return "NegativeCosts";
    case ErrorCode::kParamsInadmissible: return "ParamsInadmissible";
    case ErrorCode::kIncompatibleSolution: return "IncompatibleSolution";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kScenarioBlowup: return "ScenarioBlowup";
    case ErrorCode::kLabelingNotTotal: return "LabelingNotTotal";
    case ErrorCode::kAssignmentDoesNotSatisfy: return "AssignmentDoesNotSatisfy";
    case ErrorCode::kNotACover: return "NotACover";
    case ErrorCode::kSolutionUsesForbiddenEdge: return "SolutionUsesForbiddenEdge";
    case ErrorCode::kParamsInfeasible: return "ParamsInfeasible";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rmst
