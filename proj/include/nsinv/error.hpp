// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nsinv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Eigensolver gave up after its sweep cap.
class EigenNonConvergence : public Error {
 public:
  EigenNonConvergence(const std::string& what, double off_diagonal)
      : Error(what), off_diagonal_(off_diagonal) {}
  double off_diagonal() const noexcept { return off_diagonal_; }

 private:
  double off_diagonal_;
};

/// Non-finite values showed up in the inversion iterates.
class Divergence : public Error {
 public:
  Divergence(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// X'X is singular or too ill-conditioned for the inversion process.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsinv
