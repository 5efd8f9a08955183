#pragma once

namespace tclab {

// Selects between the OpenMP kernel and its serial reference. Both produce
// bit-identical output; the serial path exists for testing and benchmarks.
enum class Exec { Serial, Parallel };

// Number of threads OpenMP regions will use (1 when built without OpenMP).
int max_threads();

// Sets the OpenMP thread count; n <= 0 restores the runtime default.
void set_threads(int n);

}  // namespace tclab
