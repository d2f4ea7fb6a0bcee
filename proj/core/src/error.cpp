#include "brandgraph/error.hpp"

namespace brandgraph {

namespace {

std::string compose(ErrorCode code, const std::string& file, int line,
                    const std::string& message) {
  std::string out;
  if (!file.empty()) {
    out += file;
    if (line > 0) {
      out += ':';
      out += std::to_string(line);
    }
    out += ": ";
  }
  out += error_code_name(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::ReferentialIntegrity: return "ReferentialIntegrity";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::PostLimitExceeded: return "PostLimitExceeded";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidDamping: return "InvalidDamping";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::UnknownLanguage: return "UnknownLanguage";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, std::string message)
    : std::runtime_error(compose(code, "", 0, message)), code_(code) {}

Error::Error(ErrorCode code, std::string file, int line, std::string message)
    : std::runtime_error(compose(code, file, line, message)),
      code_(code),
      file_(std::move(file)),
      line_(line) {}

}  // namespace brandgraph
