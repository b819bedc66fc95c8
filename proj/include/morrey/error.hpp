#pragma once

#include <stdexcept>
#include <string>

namespace morrey {

// Single exception type for precondition and domain failures. Messages are
// stable strings that tests and the CLI match against.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace morrey
