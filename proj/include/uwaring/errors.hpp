#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uwaring {

// Base of every error raised by the library. Callers that only need a
// message can catch this; the derived types carry structured payloads.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  NotClosed(std::size_t a, std::size_t b)
      : Error("lie basis is not closed under the bracket: [b" + std::to_string(a) + ", b" +
              std::to_string(b) + "] leaves the span"),
        first(a),
        second(b) {}
  std::size_t first, second;
};

class BadLevel : public Error {
 public:
  BadLevel(std::size_t level, std::size_t levels)
      : Error("derived-series level " + std::to_string(level) + " out of range (have " +
              std::to_string(levels) + ")"),
        level(level) {}
  std::size_t level;
};

class NotUnitriangular : public Error {
 public:
  using Error::Error;
};

class NotInGroup : public Error {
 public:
  NotInGroup(std::string what, std::string offending)
      : Error(std::move(what) + ": " + offending), offending(std::move(offending)) {}
  std::string offending;  // printed coefficient matrix
};

class NotGenerating : public Error {
 public:
  NotGenerating(std::size_t level, std::string witness)
      : Error("family is not generating at level " + std::to_string(level) + ", witness " +
              witness),
        level(level),
        witness(std::move(witness)) {}
  std::size_t level;
  std::string witness;
};

class DescentStalled : public Error {
 public:
  DescentStalled(std::size_t level, std::string witness)
      : Error("commutator descent stalled at level " + std::to_string(level) +
              ", unreached covector " + witness),
        level(level),
        witness(std::move(witness)) {}
  std::size_t level;
  std::string witness;
};

class NotRepresented : public Error {
 public:
  NotRepresented(std::size_t level, std::string residual)
      : Error("moment target not represented: level " + std::to_string(level) + " residual " +
              residual + " is not divisible by " + std::to_string(level) + "!"),
        level(level),
        residual(std::move(residual)) {}
  std::size_t level;
  std::string residual;
};

class DivisibilityError : public Error {
 public:
  DivisibilityError(std::string residue, std::string divisors)
      : Error("quotient target outside the guaranteed lattice: residue " + residue + " mod " +
              divisors),
        residue(std::move(residue)),
        divisors(std::move(divisors)) {}
  std::string residue, divisors;
};

class NotInCertifiedSubgroup : public Error {
 public:
  NotInCertifiedSubgroup(std::size_t level, std::string residue, std::string divisors)
      : Error("target not in certified subgroup: level " + std::to_string(level) + " residue " +
              residue + " mod " + divisors),
        level(level),
        residue(std::move(residue)),
        divisors(std::move(divisors)) {}
  std::size_t level;
  std::string residue, divisors;
};

class NotSublattice : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  RankDeficient(std::size_t level, const std::string& why)
      : Error("certified sublattice is rank deficient at level " + std::to_string(level) + " (" +
              why + ")"),
        level(level) {}
  std::size_t level;
};

class BadPrime : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t index, std::size_t size)
      : Error("morphism index " + std::to_string(index + 1) + " out of range (family has " +
              std::to_string(size) + ")"),
        index(index) {}
  std::size_t index;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace uwaring
