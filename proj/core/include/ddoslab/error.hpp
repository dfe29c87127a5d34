#pragma once

#include <stdexcept>
#include <string>

namespace ddoslab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario, training or pipeline configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A table or file does not have the expected columns/fields.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Tensor or layer shapes do not compose.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Training diverged (non-finite loss) or otherwise could not proceed.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddoslab
