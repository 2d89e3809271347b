#pragma once

#include <stdexcept>

namespace dyadic {

// File and stream failures; everything else surfaces as std::invalid_argument
// or std::domain_error.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace dyadic
