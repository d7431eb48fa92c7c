// Copyright 2026 The anomaly-index Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "anomaly/errors.hpp"

namespace anomaly {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::NotAPermutationTable: return "NotAPermutationTable";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::MissingInverse: return "MissingInverse";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::InconsistentCoefficients: return "InconsistentCoefficients";
    case ErrorCode::NotFinitelyGenerated: return "NotFinitelyGenerated";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::SnapFailure: return "SnapFailure";
    case ErrorCode::CocycleViolation: return "CocycleViolation";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::DimensionNotCompatible: return "DimensionNotCompatible";
    case ErrorCode::NonUnitaryGate: return "NonUnitaryGate";
    case ErrorCode::OverlappingLayerGates: return "OverlappingLayerGates";
    case ErrorCode::NotAHomomorphismInBulk: return "NotAHomomorphismInBulk";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::SchmidtRankExceedsOne: return "SchmidtRankExceedsOne";
    case ErrorCode::SupportLeak: return "SupportLeak";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeCapExceeded:
      return ErrorCategory::SizeCap;
    case ErrorCode::NotScalar:
    case ErrorCode::SnapFailure:
    case ErrorCode::CocycleViolation:
    case ErrorCode::RelationViolated:
    case ErrorCode::StepTooLarge:
    case ErrorCode::SchmidtRankExceedsOne:
    case ErrorCode::SupportLeak:
      return ErrorCategory::Computation;
    default:
      return ErrorCategory::Validation;
  }
}

}  // namespace anomaly
