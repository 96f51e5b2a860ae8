#ifndef NLR_BENCH_H_
#define NLR_BENCH_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace nlr {

enum class BenchFamily {
  kNeighborhood,          // phases: levels, reconstruct
  kWeightedNeighborhood,  // phases: levels, reconstruct
  kYaroslavsky,           // phase: filter
  kBilateral,             // phase: filter
  kReference,             // serial literal rearranged filter (bilateral w)
  kDirect,                // brute-force pixel filter (bilateral w)
};

std::string to_string(BenchFamily family);

struct BenchCase {
  BenchFamily family = BenchFamily::kNeighborhood;
  int width = 64;
  int height = 64;
  int n = 32;     // image levels
  int m = 1;      // weight levels
  double rho = 0;
  double h = 20;
  int repetitions = 5;  // >= 3
  int warmup = 1;
  bool parallel = false;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string family;
  std::int64_t pixels;
  int n;
  int m;
  double rho;
  double median_seconds;
  std::string phase;
  long inner_loops;
  int threads;
  bool checksum_ok;
};

/// Times every case in order. Serial cases are pinned to one thread;
/// parallel cases use the current thread count. Each timed result is
/// compared bit-for-bit with an untimed reference run (checksum_ok).
/// Throws std::invalid_argument on an invalid case.
std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases);

/// Cases behind the scaling claims: NF level phase over N and over n,
/// weighted NF over m, plus Yaroslavsky rho-scaling and bilateral rows as
/// supplementary data.
std::vector<BenchCase> complexity_suite(bool parallel = false);

/// Serial reference vs OpenMP fast path on small images.
std::vector<BenchCase> kernels_suite();

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace nlr

#endif  // NLR_BENCH_H_
