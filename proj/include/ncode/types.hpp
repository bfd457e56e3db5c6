#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncode {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Seed = std::uint64_t;

/// Bad dimensions, out-of-range parameters, malformed configuration.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input files (CSV, CIFAR-10 binary, JSON).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical failures such as SVD non-convergence.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace ncode
