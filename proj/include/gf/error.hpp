#ifndef GF_ERROR_HPP
#define GF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gf {

enum class ErrorKind {
  malformed_input,   // bad syntax, unknown generator, invalid table
  precondition,      // caller violated a documented precondition
  resource,          // search/enumeration budget exhausted
  incomplete_combing, // normal form missing for a required element
  unsupported,       // operation not available for this input class
  not_witnessed      // a required witness was not found within the budget
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// Three-valued result for budgeted equality questions.  `undecided` is
// reserved for budget exhaustion and must never be conflated with `no`.
enum class Verdict { yes, no, undecided };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "undecided";
  }
}

} // namespace gf

#endif
