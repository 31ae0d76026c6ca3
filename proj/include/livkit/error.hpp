#pragma once

#include <stdexcept>
#include <string>

namespace livkit {

// Error categories map 1:1 onto CLI exit codes (see tools/cli).
//   ValidationError -> 1   bad flags, bad config, bad arguments
//   DataError       -> 2   malformed or missing input data, with location
//   ExternalError   -> 3   external translator command failed

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class ExternalError : public std::runtime_error {
 public:
  explicit ExternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace livkit
