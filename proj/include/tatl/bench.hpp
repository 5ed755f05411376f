#ifndef TATL_BENCH_HPP
#define TATL_BENCH_HPP

#include <string>
#include <vector>

namespace tatl {

// A generated benchmark instance: model text plus a query file whose lines
// carry expected verdicts.
struct BenchInstance {
    std::string name;
    std::string model_text;
    std::string queries_text;
};

// Families: train-gate (n trains, 2..5), standoff (n cowboys, 2..4),
// phase-king (n kings, 3..4).
std::vector<std::string> bench_families();
BenchInstance make_bench(const std::string& family, int n);

} // namespace tatl

#endif
