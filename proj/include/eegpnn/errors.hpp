#pragma once

#include <stdexcept>
#include <string>

namespace eegpnn {

// A required file or directory is missing or cannot be read.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File contents could not be interpreted (bad number, bad schema, ...).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data has an unexpected shape (segment length, ragged rows, ...).
class shape_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A saved model is inconsistent with the data it is being applied to.
class model_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eegpnn
