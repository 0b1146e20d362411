#pragma once

#include <stdexcept>
#include <string>

namespace absim {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ZeroVectorError : public Error {
  public:
    using Error::Error;
};

class DimMismatchError : public Error {
  public:
    using Error::Error;
};

class NonUnitaryError : public Error {
  public:
    using Error::Error;
};

class NonHermitianError : public Error {
  public:
    using Error::Error;
};

class OrthogonalSelectionError : public Error {
  public:
    using Error::Error;
};

class OutOfRegimeError : public Error {
  public:
    using Error::Error;
};

class NonPositiveDeltaError : public Error {
  public:
    using Error::Error;
};

class StepsOutOfRangeError : public Error {
  public:
    using Error::Error;
};

class UnknownCutError : public Error {
  public:
    using Error::Error;
};

class OrderViolationError : public Error {
  public:
    using Error::Error;
};

class UnknownArmError : public Error {
  public:
    using Error::Error;
};

class ZeroPostselectionError : public Error {
  public:
    using Error::Error;
};

// Config file is syntactically malformed.
class ParseError : public Error {
  public:
    ParseError(const std::string &msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {
    }

    int line() const {
        return line_;
    }
    int column() const {
        return column_;
    }

  private:
    int line_;
    int column_;
};

// Config parsed fine but a field has an unusable value.
class ConfigError : public Error {
  public:
    ConfigError(const std::string &field, const std::string &msg)
        : Error("invalid config field '" + field + "': " + msg), field_(field) {
    }

    const std::string &field() const {
        return field_;
    }

  private:
    std::string field_;
};

}  // namespace absim
