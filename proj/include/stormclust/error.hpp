#ifndef STORMCLUST_ERROR_HPP
#define STORMCLUST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stormclust {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  validation,   ///< a precondition on values or arguments does not hold
  config,       ///< an invalid configuration (filter window, k-range, ...)
  infeasible,   ///< no warping path exists inside the requested band
  schema,       ///< a file has the wrong columns
  parse,        ///< a cell could not be parsed
  join,         ///< two tables refer to different event sets
  io,           ///< a file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by the outside world (files, formats) rather than by the computation.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::schema || kind_ == ErrorKind::parse || kind_ == ErrorKind::io;
  }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};
struct InfeasibleWindowError : Error {
  explicit InfeasibleWindowError(const std::string& what) : Error(ErrorKind::infeasible, what) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};
struct JoinError : Error {
  explicit JoinError(const std::string& what) : Error(ErrorKind::join, what) {}
};
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace stormclust

#endif
