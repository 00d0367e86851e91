#ifndef TREEBAYES_ERRORS_H_
#define TREEBAYES_ERRORS_H_

#include <stdexcept>
#include <string>

namespace treebayes {

// Base class for every error raised by the library. The three subclasses
// map one-to-one onto the CLI exit codes (1 usage, 2 data, 3 invariant).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration: out-of-range parameters, contract
// violations by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (CSV rows, model files).
class DataError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed, e.g. a tree whose child counts do
// not sum to the parent counts.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace treebayes

#endif  // TREEBAYES_ERRORS_H_
