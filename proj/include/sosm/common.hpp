#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sosm {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Runtime failure in mesh construction, assembly or solves.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A state became inadmissible (nonpositive mole fraction, density, ...).
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, int cell)
      : Error(what + " (cell " + std::to_string(cell) + ")"), cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace sosm
