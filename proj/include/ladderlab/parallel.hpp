#pragma once

#include <cstddef>

namespace ladderlab {

enum class ExecPolicy { serial, parallel, automatic };

/// Worker cap: LADDERLAB_THREADS if set to a positive integer, otherwise the
/// OpenMP default.
int max_threads();

/// Below this many points the automatic policy stays serial.
inline constexpr std::size_t kParallelThreshold = 2048;

bool run_parallel(ExecPolicy policy, std::size_t count);

}  // namespace ladderlab
