#pragma once

#include <stdexcept>
#include <string>

namespace hgd {

/// Base of all engine errors. The category drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Category { Domain, Unsupported, Resource, Parse };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

/// Violated precondition of a pure operation (division by zero, mismatched
/// field contexts, wrong asymptotic class, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Category::Domain, what) {}
};

/// The instance lies outside the classes the engine decides.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what)
      : Error(Category::Unsupported, what) {}
};

/// A configured cap (precision, scan length, search budget) was exceeded.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(Category::Resource, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(Category::Parse, what) {}
};

}  // namespace hgd

namespace hgd {

// An interval operation could not certify its result at the current
// precision (e.g. division by an enclosure of zero).  Callers escalate.
class IntervalIndeterminate : public DomainError {
 public:
  explicit IntervalIndeterminate(const std::string& what) : DomainError(what) {}
};

}  // namespace hgd
