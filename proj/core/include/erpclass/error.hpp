#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace erpclass {

enum class ErrorCode {
  kMissingFile,
  kMissingHeader,
  kHeaderMismatch,
  kNonNumericCell,
  kInvalidCategory,
  kUnknownSubject,
  kDuplicateDemographics,
  kGroupMismatch,
  kRowCountMismatch,
  kEmptySelection,
  kUnknownColumn,
  kSchemaMismatch,
  kTooFewRows,
  kTooFewColumns,
  kNonFiniteValue,
  kInvalidDistribution,
  kInvalidConfig,
  kLengthMismatch,
  kEmptyTrainingSet,
  kKTooLarge,
  kSingleClassTraining,
  kSingleClass,
  kInfeasibleStratification,
  kInvalidModel,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure surfaces as this exception. The code is stable and
// is what the CLI prints; the message carries the location detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace erpclass
