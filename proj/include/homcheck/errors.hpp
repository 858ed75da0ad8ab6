#ifndef HOMCHECK_ERRORS_HPP
#define HOMCHECK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homcheck {

/// Malformed input file. Message carries "<path>:<line>: <what>".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Structurally valid input that violates a cross-record constraint
/// (duplicate ids, non-disjoint clusters, unmatched adjudication keys...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homcheck

#endif
