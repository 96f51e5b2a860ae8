#include "nlr/bench.h"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <stdexcept>

#include "nlr/filters.h"
#include "nlr/image.h"
#include "nlr/parallel.h"
#include "nlr/rearrange.h"

namespace nlr {

std::string to_string(BenchFamily family) {
  switch (family) {
    case BenchFamily::kNeighborhood: return "neighborhood";
    case BenchFamily::kWeightedNeighborhood: return "weighted_neighborhood";
    case BenchFamily::kYaroslavsky: return "yaroslavsky";
    case BenchFamily::kBilateral: return "bilateral";
    case BenchFamily::kReference: return "reference_bilateral";
    case BenchFamily::kDirect: return "direct_bilateral";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

// Minimum wall time of one timed batch before the inner loop stops growing.
constexpr double kMinBatchSeconds = 2e-2;

std::uint64_t checksum(const std::vector<double>& values) {
  std::uint64_t hash = 1469598103934665603ull;
  for (double v : values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    hash = (hash ^ bits) * 1099511628211ull;
  }
  return hash;
}

std::vector<double> as_vector(const Image& img) {
  return {img.pixels().begin(), img.pixels().end()};
}

struct Timing {
  double median_seconds;
  long inner_loops;
  bool checksum_ok;
};

Timing time_phase(const std::function<std::vector<double>()>& body,
                  int repetitions, int warmup) {
  const std::uint64_t expected = checksum(body());
  for (int i = 0; i < warmup; ++i) body();

  long inner = 1;
  while (true) {
    const auto start = Clock::now();
    for (long i = 0; i < inner; ++i) body();
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= kMinBatchSeconds || inner >= (1L << 24)) break;
    inner *= 2;
  }

  bool ok = true;
  std::vector<double> per_call;
  for (int r = 0; r < repetitions; ++r) {
    std::vector<double> result;
    const auto start = Clock::now();
    for (long i = 0; i < inner; ++i) result = body();
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    per_call.push_back(elapsed / static_cast<double>(inner));
    ok = ok && checksum(result) == expected;
  }
  std::nth_element(per_call.begin(), per_call.begin() + per_call.size() / 2,
                   per_call.end());
  return {per_call[per_call.size() / 2], inner, ok};
}

void validate(const BenchCase& c) {
  if (c.repetitions < 3) {
    throw std::invalid_argument("bench: repetitions must be >= 3");
  }
  if (c.width < 1 || c.height < 1 || c.n < 1 || c.m < 1 || c.warmup < 0) {
    throw std::invalid_argument("bench: invalid case dimensions");
  }
  if (static_cast<std::int64_t>(c.n) >
      static_cast<std::int64_t>(c.width) * c.height) {
    throw std::invalid_argument("bench: more levels than pixels");
  }
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases) {
  std::vector<BenchRow> rows;
  for (const BenchCase& c : cases) {
    validate(c);
    const ScopedThreads threads(c.parallel ? num_threads() : 1);
    const int used_threads = num_threads();
    const QuantizedImage qimg = quantize(
        synthesize(SynthesisKind::random(c.seed, c.n), c.width, c.height));
    const KernelSpec kernel = KernelSpec::gaussian(c.h);
    const std::int64_t pixels = std::int64_t(c.width) * c.height;

    auto emit = [&](const std::string& phase, const Timing& t) {
      rows.push_back({to_string(c.family), pixels, c.n, c.m, c.rho,
                      t.median_seconds, phase, t.inner_loops, used_threads,
                      t.checksum_ok});
    };

    switch (c.family) {
      case BenchFamily::kNeighborhood: {
        const Rearrangement r = decreasing_rearrangement(qimg);
        emit("levels", time_phase([&] { return nf_filter_levels(r, kernel); },
                                  c.repetitions, c.warmup));
        const std::vector<double> levels = nf_filter_levels(r, kernel);
        emit("reconstruct",
             time_phase([&] { return as_vector(expand_levels(qimg, levels)); },
                        c.repetitions, c.warmup));
        break;
      }
      case BenchFamily::kWeightedNeighborhood: {
        const Image wbar = synthesize(SynthesisKind::random(c.seed + 1, c.m),
                                      c.width, c.height);
        const Rearrangement r = decreasing_rearrangement(qimg);
        const StepFunction wsu = relative_rearrangement(qimg, wbar.pixels());
        emit("levels", time_phase(
                           [&] {
                             return weighted_nf_filter_levels(r, wsu, kernel);
                           },
                           c.repetitions, c.warmup));
        const std::vector<double> levels =
            weighted_nf_filter_levels(r, wsu, kernel);
        emit("reconstruct",
             time_phase([&] { return as_vector(expand_levels(qimg, levels)); },
                        c.repetitions, c.warmup));
        break;
      }
      case BenchFamily::kYaroslavsky:
        emit("filter", time_phase(
                           [&] {
                             return as_vector(
                                 yaroslavsky_filter(qimg, c.rho, kernel));
                           },
                           c.repetitions, c.warmup));
        break;
      case BenchFamily::kBilateral:
        emit("filter", time_phase(
                           [&] {
                             return as_vector(
                                 bilateral_filter(qimg, c.rho, c.m, kernel));
                           },
                           c.repetitions, c.warmup));
        break;
      case BenchFamily::kReference: {
        const FilterConfig cfg{kernel, GaussianSpatialWeight{c.rho, c.m}};
        emit("filter",
             time_phase(
                 [&] { return as_vector(reference::rearranged_filter(qimg, cfg)); },
                 c.repetitions, c.warmup));
        break;
      }
      case BenchFamily::kDirect: {
        const Image img = qimg.to_image();
        const FilterConfig cfg{kernel, GaussianSpatialWeight{c.rho, c.m}};
        emit("filter",
             time_phase([&] { return as_vector(direct_filter(img, cfg)); },
                        c.repetitions, c.warmup));
        break;
      }
    }
  }
  return rows;
}

std::vector<BenchCase> complexity_suite(bool parallel) {
  std::vector<BenchCase> cases;
  auto add = [&](BenchCase c) {
    c.parallel = parallel;
    // Shared machines are noisy; a wider median keeps the ratios stable.
    c.repetitions = 11;
    cases.push_back(c);
  };
  // NF level phase vs N at n = 32.
  for (int side : {64, 256, 1024}) {
    add({BenchFamily::kNeighborhood, side, side, 32});
  }
  // NF level phase vs n at fixed N.
  for (int n : {32, 64, 128}) {
    add({BenchFamily::kNeighborhood, 256, 256, n});
  }
  // Weighted NF vs m.
  for (int m : {2, 4, 8}) {
    add({BenchFamily::kWeightedNeighborhood, 256, 256, 64, m});
  }
  // Supplementary: Yaroslavsky over rho, bilateral over m.
  for (double rho : {2.0, 4.0, 8.0}) {
    add({BenchFamily::kYaroslavsky, 128, 128, 32, 2, rho});
  }
  for (int m : {4, 8, 16}) {
    add({BenchFamily::kBilateral, 128, 128, 32, m, 2.0});
  }
  return cases;
}

std::vector<BenchCase> kernels_suite() {
  std::vector<BenchCase> cases;
  for (BenchFamily f :
       {BenchFamily::kDirect, BenchFamily::kReference, BenchFamily::kBilateral}) {
    BenchCase c{f, 32, 32, 16, 4, 2.0};
    c.repetitions = 3;
    cases.push_back(c);
  }
  BenchCase par{BenchFamily::kBilateral, 32, 32, 16, 4, 2.0};
  par.repetitions = 3;
  par.parallel = true;
  cases.push_back(par);
  return cases;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "family,N,n,m,rho,median_seconds,phase,inner_loops,threads,"
         "checksum_ok\n";
  out << std::setprecision(9);
  for (const BenchRow& r : rows) {
    out << r.family << ',' << r.pixels << ',' << r.n << ',' << r.m << ','
        << r.rho << ',' << r.median_seconds << ',' << r.phase << ','
        << r.inner_loops << ',' << r.threads << ','
        << (r.checksum_ok ? "true" : "false") << '\n';
  }
}

}  // namespace nlr
