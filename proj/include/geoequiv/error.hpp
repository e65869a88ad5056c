#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geoequiv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input graph has no four non-coplanar nodes (or is otherwise too small).
class DegenerateGraph : public Error {
 public:
  using Error::Error;
};

/// Degenerate input too large for the brute-force fallback.
class UnsupportedDegenerate : public Error {
 public:
  using Error::Error;
};

/// The equivariant virtual nodes collapsed onto a plane; the fast canonical
/// form is not applicable to this graph.
class CoplanarVirtualNodes : public Error {
 public:
  CoplanarVirtualNodes(const std::string& what, double noncoplanarity)
      : Error(what), noncoplanarity_(noncoplanarity) {}
  double noncoplanarity() const noexcept { return noncoplanarity_; }

 private:
  double noncoplanarity_;
};

class RankDeficiency : public Error {
 public:
  RankDeficiency(const std::string& what, std::size_t achieved, std::size_t target)
      : Error(what), achieved_(achieved), target_(target) {}
  std::size_t achieved() const noexcept { return achieved_; }
  std::size_t target() const noexcept { return target_; }

 private:
  std::size_t achieved_;
  std::size_t target_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace geoequiv
