#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bayesmet {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Per-mode Fock cutoffs; two-mode basis |n,m> is flattened as n*d2 + m.
struct FockDims {
    int d1 = 0;
    int d2 = 0;

    int size() const { return d1 * d2; }
    bool contains(const FockDims& other) const { return d1 >= other.d1 && d2 >= other.d2; }
    bool operator==(const FockDims& other) const { return d1 == other.d1 && d2 == other.d2; }
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CutoffError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

}  // namespace bayesmet
