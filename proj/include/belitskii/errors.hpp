#pragma once

#include <stdexcept>
#include <string>

namespace belitskii {

/// A matrix that must be invertible (or an element that must be nonzero) is not.
class SingularError : public std::runtime_error {
public:
  explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

/// Input matrix must be strictly upper triangular but has a nonzero entry on
/// or below the diagonal.
class NotStrictlyUpper : public std::runtime_error {
public:
  explicit NotStrictlyUpper(const std::string& what) : std::runtime_error(what) {}
};

/// Input matrix must be upper triangular but has a nonzero entry below the
/// diagonal.
class NotUpperTriangular : public std::runtime_error {
public:
  explicit NotUpperTriangular(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (matrix file, graph type string, CLI argument).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A brute-force table was requested beyond the supported size cap.
class SizeCapError : public std::runtime_error {
public:
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace belitskii
