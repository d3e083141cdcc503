#pragma once

#include <stdexcept>
#include <string>

namespace wfr {

// Bad arguments or malformed data handed to the library.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced non-finite values it could not recover from.
struct numeric_failure : std::runtime_error {
  numeric_failure(const std::string& what, long iteration_index)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration_index) + ")"),
        iteration(iteration_index) {}
  long iteration;
};

// A file could not be parsed; carries the 1-based line where parsing stopped.
struct format_error : std::runtime_error {
  format_error(const std::string& path, long line_number, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  long line;
};

}  // namespace wfr
