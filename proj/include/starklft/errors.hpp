#pragma once

#include <stdexcept>
#include <string>

namespace starklft {

// All library failures derive from Error so callers can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Argument sits on (or within tolerance of) a pole of Gamma, digamma or cot.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Result not representable in binary64, or input outside the supported working range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Iterative procedure (series, eigen solve, truncated sum) did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Near-origin fit window unusable for the channel-normalization fit.
class WindowError : public Error {
 public:
  using Error::Error;
};

// Evaluation grid extends beyond the near-Coulomb region.
class RegionError : public Error {
 public:
  using Error::Error;
};

// Cutoff regularization produced no stable plateau.
class PlateauError : public Error {
 public:
  using Error::Error;
};

}  // namespace starklft
