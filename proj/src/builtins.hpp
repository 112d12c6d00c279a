#pragma once

#include "wb/machine.hpp"

namespace wb::machine::detail {

/// Fixed interpreters (tag 2). Charges one step for entry plus every
/// simulated step of nested runs.
Exec run_interpreter(const Nat& id, const Nat& x, std::uint64_t limit);

}  // namespace wb::machine::detail
