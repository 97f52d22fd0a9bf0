#pragma once

#include <stdexcept>
#include <string>

namespace d4syl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p = 2, or p is not a prime.
class EvenCharacteristic : public Error {
 public:
  using Error::Error;
};

/// A user-supplied defining polynomial factors (or has the wrong shape).
class ReduciblePolynomial : public Error {
 public:
  using Error::Error;
};

/// No admissible eta exists. Unreachable for valid towers.
class NoEta : public Error {
 public:
  using Error::Error;
};

/// zeta_u requested with u = 0.
class ZeroTwist : public Error {
 public:
  using Error::Error;
};

/// Transversal of a.F_q requested with a = 0.
class ZeroModulus : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation exceeds its configured cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A class representative that is not part of the canonical census.
class UnknownClass : public Error {
 public:
  using Error::Error;
};

/// Element passed to a subgroup character lies outside the subgroup.
class NotInSubgroup : public Error {
 public:
  using Error::Error;
};

/// Fixed-width cyclotomic arithmetic overflowed.
class IntegerOverflow : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (element strings, coefficient lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace d4syl
