#pragma once

#include <stdexcept>
#include <string>

namespace aqp {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (w >= 2^n, s outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dimension mismatch between states and operators.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Requested register or table exceeds a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A Simon oracle was requested with a = 0; no 2-to-1 function exists.
class PromiseError : public Error {
 public:
  using Error::Error;
};

// Unitary stepping drifted off the unit sphere beyond tolerance.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Sampling landed on a branch whose probability underflowed to zero.
class MeasurementError : public Error {
 public:
  using Error::Error;
};

// GF(2) system has full rank: no nonzero mask is consistent with the rows.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

// Invalid RunConfig or protocol-level failure (e.g. corrupted rows).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace aqp
