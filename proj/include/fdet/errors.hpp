#pragma once

#include <stdexcept>
#include <string>

namespace fdet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with different n_vars, trunc or band.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of the operation (s <= 0, constant term in a map, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input excluded by the theorems' hypotheses: constant germs, zero ideals.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A hypothesis inclusion such as g in M^{mu+2} failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class BandOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace fdet
