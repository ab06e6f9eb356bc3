#pragma once

#include <cstddef>
#include <functional>

namespace gramlocus {

/// 0 means "all hardware threads".
int resolve_threads(int requested);

/// Calls body(chunk) for every chunk in [0, chunks), spread over `threads`
/// workers that pull chunk ids from a shared counter. Each chunk runs exactly
/// once; callers store per-chunk results by index so the merge order does
/// not depend on scheduling. The first exception thrown by a body is
/// rethrown after all workers stop.
void for_each_chunk(std::size_t chunks, int threads, const std::function<void(std::size_t)>& body);

}  // namespace gramlocus
