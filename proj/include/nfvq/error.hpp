#ifndef NFVQ_ERROR_HPP_
#define NFVQ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nfvq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
   using std::runtime_error::runtime_error;
};

/// Chain, step, VM or slot index outside the instance.
class IndexError : public Error {
 public:
   using Error::Error;
};

/// A VM was asked to serve a function kind it does not host.
class CapabilityError : public Error {
 public:
   using Error::Error;
};

/// Text input (instance, schedule, QUBO, result file) could not be parsed.
class ParseError : public Error {
 public:
   using Error::Error;
};

/// Parsed data violates a model invariant (nonpositive rate, unservable kind, ...).
class ValidationError : public Error {
 public:
   using Error::Error;
};

/// Tensor or bit-vector dimensions do not match the instance / model.
class ShapeError : public Error {
 public:
   using Error::Error;
};

/// Finish indicators of a chain are missing or ambiguous.
class MalformedScheduleError : public Error {
 public:
   using Error::Error;
};

/// Search space or variable count exceeds a configured guard.
class SizeError : public Error {
 public:
   using Error::Error;
};

/// Operation requires a feasible schedule.
class InfeasibleScheduleError : public Error {
 public:
   using Error::Error;
};

}  // namespace nfvq

#endif  // NFVQ_ERROR_HPP_
