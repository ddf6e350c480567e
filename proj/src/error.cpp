#include "ffadc/error.hpp"

namespace ffadc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidStimulus: return "invalid_stimulus";
    case ErrorKind::kEmptyRequest: return "empty_request";
    case ErrorKind::kInvalidRequest: return "invalid_request";
    case ErrorKind::kScheduleInfeasible: return "schedule_infeasible";
    case ErrorKind::kUnreachableOffset: return "unreachable_offset";
    case ErrorKind::kResidualBubble: return "residual_bubble";
    case ErrorKind::kMissingCode: return "missing_code";
    case ErrorKind::kLengthError: return "length_error";
    case ErrorKind::kEmptySpectrum: return "empty_spectrum";
    case ErrorKind::kConfig: return "config_error";
    case ErrorKind::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace ffadc
