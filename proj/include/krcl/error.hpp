#pragma once

#include <stdexcept>
#include <string>

namespace krcl {

enum class ErrorKind {
  Argument,
  Parse,
  Domain,
  Precondition,
  LemmaViolation,
  BudgetExceeded,
  Overflow,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorKind::Argument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

/// Raised when a structural guarantee of the construction fails at runtime.
/// `lemma()` names the guarantee so reports can group failures.
class LemmaViolation : public Error {
 public:
  LemmaViolation(std::string lemma, const std::string& what)
      : Error(ErrorKind::LemmaViolation, lemma + ": " + what), lemma_(std::move(lemma)) {}
  const std::string& lemma() const noexcept { return lemma_; }

 private:
  std::string lemma_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::BudgetExceeded, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(ErrorKind::Overflow, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace krcl
