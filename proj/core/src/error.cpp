#include "erpclass/error.hpp"

namespace erpclass {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kMissingHeader: return "MissingHeader";
    case ErrorCode::kHeaderMismatch: return "HeaderMismatch";
    case ErrorCode::kNonNumericCell: return "NonNumericCell";
    case ErrorCode::kInvalidCategory: return "InvalidCategory";
    case ErrorCode::kUnknownSubject: return "UnknownSubject";
    case ErrorCode::kDuplicateDemographics: return "DuplicateDemographics";
    case ErrorCode::kGroupMismatch: return "GroupMismatch";
    case ErrorCode::kRowCountMismatch: return "RowCountMismatch";
    case ErrorCode::kEmptySelection: return "EmptySelection";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kTooFewColumns: return "TooFewColumns";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kSingleClassTraining: return "SingleClassTraining";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kInfeasibleStratification: return "InfeasibleStratification";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace erpclass
