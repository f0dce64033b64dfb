#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primbase {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

// A configured degree/order/budget cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Unsupported parameters, or a constructed group failed its order check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace primbase
