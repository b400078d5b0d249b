#pragma once

#include <stdexcept>
#include <string>

namespace epsbias {

// Base of all library errors. The three intermediate categories map onto the
// CLI exit-code contract: precondition/infeasibility -> 1, parse/IO -> 2,
// enumeration cap -> 3.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

class ParseIoError : public Error {
  public:
    using Error::Error;
};

class CapError : public Error {
  public:
    using Error::Error;
};

class CompositeCharacteristic : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class ReducibleModulus : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class DivisionByZero : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class FieldMismatch : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class ZeroCode : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class IndexOutOfRange : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class SizeTooLarge : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class DomainError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class OddMoment : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class InfeasibleParameters : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class DuplicatePoints : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class TooLong : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class BadParameters : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class RankFailure : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class ExpansionNotAchieved : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class WalkStalled : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class EnumerationCapExceeded : public CapError {
  public:
    using CapError::CapError;
};

class ParseError : public ParseIoError {
  public:
    using ParseIoError::ParseIoError;
};

class RankMismatch : public ParseIoError {
  public:
    using ParseIoError::ParseIoError;
};

class IoError : public ParseIoError {
  public:
    using ParseIoError::ParseIoError;
};

}  // namespace epsbias
