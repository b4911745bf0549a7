#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Special functions and numerics.
class PoleError : public Error { using Error::Error; };
class PrecisionLoss : public Error {
 public:
  PrecisionLoss(const std::string& what, double certified_bound)
      : Error(what), certified_bound_(certified_bound) {}
  /// Largest |z| (or |x|) certified at the requested tolerance, when known.
  double certified_bound() const noexcept { return certified_bound_; }

 private:
  double certified_bound_;
};
class QuadratureFailure : public Error { using Error::Error; };
class DegenerateNorm : public Error { using Error::Error; };

// Spectra.
class NoZeros : public Error { using Error::Error; };
class CutoffTooSmall : public Error { using Error::Error; };

// Charmonium fit.
class MissingB : public Error { using Error::Error; };
class OutOfRange : public Error { using Error::Error; };
class RankDeficient : public Error { using Error::Error; };
class NegativeZeroPoint : public Error { using Error::Error; };
class DuplicateState : public Error { using Error::Error; };
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Command-line surface.
class DomainExceeded : public Error {
 public:
  DomainExceeded(const std::string& what, double bound) : Error(what), bound_(bound) {}
  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

}  // namespace fracspec
