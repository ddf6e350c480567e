#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffadc {

enum class ErrorKind {
  kInvalidStimulus,
  kEmptyRequest,
  kInvalidRequest,
  kScheduleInfeasible,
  kUnreachableOffset,
  kResidualBubble,
  kMissingCode,
  kLengthError,
  kEmptySpectrum,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Config errors additionally name the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(ErrorKind::kConfig, path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace ffadc
