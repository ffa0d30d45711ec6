#pragma once

#include <stdexcept>
#include <string>

namespace vsp {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_parameter : error {
  using error::error;
};

// enumeration or candidate budgets exceeded
struct resource_error : error {
  using error::error;
};

struct format_error : error {
  using error::error;
};

struct precondition_error : error {
  using error::error;
};

struct infeasible_prescription : error {
  using error::error;
};

}  // namespace vsp
