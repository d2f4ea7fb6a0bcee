#pragma once

#include <stdexcept>
#include <string>

namespace brandgraph {

enum class ErrorCode {
  MissingFile,
  MalformedRow,
  ReferentialIntegrity,
  DuplicateId,
  PostLimitExceeded,
  IoError,
  DegenerateGraph,
  EmptyGraph,
  InvalidDamping,
  PartitionMismatch,
  UnknownLanguage,
  InvalidSpec,
};

const char* error_code_name(ErrorCode code);

/// Domain error carrying a machine-readable code and, for file-level
/// failures, the offending file and 1-based line number.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message);
  Error(ErrorCode code, std::string file, int line, std::string message);

  ErrorCode code() const { return code_; }
  const std::string& file() const { return file_; }
  int line() const { return line_; }

private:
  ErrorCode code_;
  std::string file_;
  int line_ = 0;
};

}  // namespace brandgraph
