#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace rve {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Base class for all solver-facing errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed deck or mesh input.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A boundary node has no periodic partner (non-PDBC-matching mesh).
class MatchFailure : public Error {
 public:
  MatchFailure(const std::string& msg, int node_id, int axis)
      : Error(msg), node_id(node_id), axis(axis) {}
  int node_id;
  int axis;
};

/// det F <= 0 at a quadrature point.
class InvertedElement : public Error {
 public:
  InvertedElement(const std::string& msg, const Vec3& where)
      : Error(msg), location(where) {}
  Vec3 location;
};

/// Newton failed after all step cutbacks.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace rve
