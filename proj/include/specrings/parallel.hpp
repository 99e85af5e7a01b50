#pragma once

#include <cstddef>
#include <functional>

namespace specrings {

// Resolves a worker count: explicit value if > 0, else SPECRINGS_THREADS,
// else hardware concurrency (at least 1).
unsigned resolve_threads(int requested);

// Runs body(i) for i in [0, count) on `threads` workers. Work is handed out
// by index, so any body that writes only to slot i is order-independent.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace specrings
