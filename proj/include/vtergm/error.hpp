#pragma once

#include <stdexcept>
#include <string>

namespace vtergm {

/// Broad failure classes; the CLI maps each to an exit code.
enum class ErrorKind {
  kDomain,       // violated precondition on a parameter or input
  kParse,        // malformed input file
  kResource,     // resource guard or search cap exceeded
  kConsistency,  // cached state disagrees with a full recount
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::kDomain, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::kResource, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorKind::kConsistency, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace vtergm
