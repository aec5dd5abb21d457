#include "krcl/error.hpp"

namespace krcl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::LemmaViolation: return "lemma_violation";
    case ErrorKind::BudgetExceeded: return "budget_exceeded";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace krcl
