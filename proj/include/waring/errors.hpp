#pragma once

#include <stdexcept>
#include <string>

namespace waring {

// A MUST-level property of the computation did not hold.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string operation, std::string inputs,
                     const std::string& what)
      : std::runtime_error(what),
        operation_(std::move(operation)),
        inputs_(std::move(inputs)) {}

  const std::string& operation() const noexcept { return operation_; }
  const std::string& inputs() const noexcept { return inputs_; }

 private:
  std::string operation_;
  std::string inputs_;
};

// Memory or width guard tripped (table too large, coefficient overflow).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace waring
