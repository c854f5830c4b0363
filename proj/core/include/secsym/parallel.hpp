#pragma once

#include <cstddef>
#include <functional>

namespace secsym {

/// Global worker cap for node-parallel loops. Defaults to 1 (serial).
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, n). Each index must write only its own slots;
/// results are bit-identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace secsym
