#pragma once

#include <stdexcept>
#include <string>

namespace rct {

// Formula asked to extrapolate outside its validity window (e.g. u*w(u) <= 1).
struct pre_asymptotic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Survival underflowed or the requested point sits where no digits survive.
struct unreliable_region_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical oracle (quadrature / grid fold) failed to meet its error target.
struct oracle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rct
