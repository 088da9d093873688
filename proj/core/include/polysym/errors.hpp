#pragma once

#include <stdexcept>
#include <string>

namespace polysym {

// Base of everything the library throws on a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
 public:
  ChartMismatch() : Error("operands live on different charts") {}
  explicit ChartMismatch(const std::string& what) : Error(what) {}
};

class UnknownGenerator : public Error {
 public:
  explicit UnknownGenerator(const std::string& name)
      : Error("unknown generator '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace polysym
