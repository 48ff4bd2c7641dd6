#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace levy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or a violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quadrature or root finder stopped short of its target.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved)
      : Error(what + " (achieved error " + sci(achieved) + ")"), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  static std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
  double achieved_;
};

// Malformed model description. field is a dotted path, line is 0 when unknown.
class ModelError : public Error {
 public:
  ModelError(const std::string& field, const std::string& msg, int line = 0)
      : Error(format(field, msg, line)), field_(field), message_(msg), line_(line) {}
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& msg, int line) {
    std::string s;
    if (line > 0) s += "line " + std::to_string(line) + ": ";
    if (!field.empty()) s += field + ": ";
    return s + msg;
  }
  std::string field_;
  std::string message_;
  int line_;
};

// A meaningful negative answer, e.g. e^{-t Re psi} is not integrable at this t.
class Refusal : public Error {
 public:
  Refusal(const std::string& verdict, const std::string& reason)
      : Error(verdict + ": " + reason), verdict_(verdict), reason_(reason) {}
  const std::string& verdict() const { return verdict_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string verdict_;
  std::string reason_;
};

}  // namespace levy
