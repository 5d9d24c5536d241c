#pragma once

namespace cpsep {

// Kernels that have an OpenMP variant keep a serial reference path. Both return
// identical results; the serial path exists for testing and benchmarking.
enum class Execution { serial, parallel };

}  // namespace cpsep
