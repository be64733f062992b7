#pragma once

#include <stdexcept>
#include <string>

namespace xdock {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent instance data.
class InstanceError : public Error {
 public:
  using Error::Error;
};

// Grid shapes do not match the instance dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class MalformedSolutionError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

// The exhaustive search refuses instances beyond its guard rails.
class GuardRailError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

class WarmStartError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

}  // namespace xdock
