#pragma once

#include <stdexcept>
#include <string>

namespace fjn {

/// Rejected input: bad dimensions, out-of-range parameters, bad indices.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A network graph that is not a well-formed DAG.
class NetworkError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A network or run file that cannot be read or does not match the schema.
class SchemaError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace fjn
