#include <benchmark/benchmark.h>

// Own main: the distro's libbenchmark_main.a ships LTO bytecode tied to a
// specific compiler patch release.
BENCHMARK_MAIN();
