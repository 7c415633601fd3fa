#pragma once

#include <stdexcept>
#include <string>

namespace swapgame {

// Base of every error raised by the library. Each subclass names one failure
// category so callers (CLI exit codes, HTTP status mapping) can dispatch on it.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operand lengths or matrix shapes disagree.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Malformed input document; message carries the offending field or line.
class ParseError : public Error {
public:
  using Error::Error;
};

// A board fails structural validation where a valid board is required.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Unknown ids, inconsistent embeddings.
class StructuralError : public Error {
public:
  using Error::Error;
};

// Illegal move or disconnected start.
class RuleViolation : public Error {
public:
  using Error::Error;
};

// Operation on a finished game.
class TerminalError : public Error {
public:
  using Error::Error;
};

// The board lacks the connectivity information an operation needs.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

// A size guard was exceeded.
class CapacityError : public Error {
public:
  using Error::Error;
};

// Malformed pairing strategy.
class StrategyError : public Error {
public:
  using Error::Error;
};

// Input outside an operation's mathematical domain (e.g. disconnected graph).
class DomainError : public Error {
public:
  using Error::Error;
};

} // namespace swapgame
