#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lnd {

// Base of every error raised by the library. `kind()` is a stable tag used by
// the CLI to classify failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
  // True when the error means "mathematically rejected" rather than bad input.
  virtual bool is_rejection() const noexcept { return false; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  // document-level errors without a character position
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg), pos_(0) {}
  std::size_t position() const noexcept { return pos_; }
  const char* kind() const noexcept override { return "ParseError"; }

 private:
  std::size_t pos_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }
  const char* kind() const noexcept override { return "UnknownVariable"; }

 private:
  std::string name_;
};

class RingMismatch : public Error {
 public:
  explicit RingMismatch(const std::string& what) : Error("ring mismatch: " + what) {}
  const char* kind() const noexcept override { return "RingMismatch"; }
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

class NotDivisible : public Error {
 public:
  explicit NotDivisible(const std::string& what) : Error("not divisible: " + what) {}
  const char* kind() const noexcept override { return "NotDivisible"; }
  bool is_rejection() const noexcept override { return true; }
};

class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::string variable = {})
      : Error("iteration cap exceeded: " + what), variable_(std::move(variable)) {}
  const std::string& variable() const noexcept { return variable_; }
  const char* kind() const noexcept override { return "CapExceeded"; }
  bool is_rejection() const noexcept override { return true; }

 private:
  std::string variable_;
};

// A named mathematical condition did not hold. `condition()` names it and
// `witness()` carries a printable value showing why.
class ConditionFailed : public Error {
 public:
  ConditionFailed(std::string condition, std::string witness)
      : Error("condition failed: " + condition + (witness.empty() ? "" : " (witness: " + witness + ")")),
        condition_(std::move(condition)),
        witness_(std::move(witness)) {}
  const std::string& condition() const noexcept { return condition_; }
  const std::string& witness() const noexcept { return witness_; }
  const char* kind() const noexcept override { return "ConditionFailed"; }
  bool is_rejection() const noexcept override { return true; }

 private:
  std::string condition_;
  std::string witness_;
};

class NotAnAutomorphism : public Error {
 public:
  explicit NotAnAutomorphism(const std::string& what) : Error("not an automorphism: " + what) {}
  const char* kind() const noexcept override { return "NotAnAutomorphism"; }
  bool is_rejection() const noexcept override { return true; }
};

class NotFoundWithinBounds : public Error {
 public:
  explicit NotFoundWithinBounds(const std::string& what) : Error("not found within bounds: " + what) {}
  const char* kind() const noexcept override { return "NotFoundWithinBounds"; }
  bool is_rejection() const noexcept override { return true; }
};

}  // namespace lnd
