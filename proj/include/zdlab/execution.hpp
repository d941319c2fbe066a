#pragma once

namespace zdlab {

// Kernels with an OpenMP implementation also keep the serial loop they were
// derived from; tests compare the two and the benchmark times them.
enum class Execution { Serial, Parallel };

}  // namespace zdlab
