#pragma once

#include <stdexcept>
#include <string>

namespace sparsereg {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroColumnError : Error {
  int column;
  explicit ZeroColumnError(int j)
      : Error("column " + std::to_string(j) + " has zero norm"), column(j) {}
};

struct NotNormalizedError : Error {
  NotNormalizedError() : Error("matrix columns are not unit-normalized") {}
  explicit NotNormalizedError(const std::string& what) : Error(what) {}
};

struct TooFewColumnsError : Error {
  TooFewColumnsError() : Error("operation requires at least two columns") {}
};

struct EmptyIndexSetError : Error {
  EmptyIndexSetError() : Error("index set is empty") {}
};

struct RowMismatchError : Error {
  RowMismatchError() : Error("matrices have different row counts") {}
};

struct InvalidMatrixError : Error {
  using Error::Error;
};

struct OutOfRangeError : Error {
  using Error::Error;
};

// Exact enumeration would exceed the configured subset cap.
struct TooLargeError : Error {
  using Error::Error;
};

struct NoAdmissibleSubsetError : Error {
  NoAdmissibleSubsetError()
      : Error("no column subset of the requested size meets the "
              "conditioning requirement") {}
};

struct DimensionUnsupportedError : Error {
  explicit DimensionUnsupportedError(int d)
      : Error("deterministic sphere nets are only built for dimension <= 3 "
              "(requested " +
              std::to_string(d) + "); use Monte-Carlo directions instead") {}
};

struct TargetTooSmallError : Error {
  using Error::Error;
};

struct InvalidDirectionError : Error {
  InvalidDirectionError() : Error("direction vector must have unit norm") {}
};

// Rejection sampling ran out of attempts.
struct ExhaustedError : Error {
  int tries;
  explicit ExhaustedError(int tries_)
      : Error("no acceptable subset found in " + std::to_string(tries_) +
              " tries"),
        tries(tries_) {}
};

struct SparsityTooLargeError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct ReductionFailedError : Error {
  using Error::Error;
};

}  // namespace sparsereg
