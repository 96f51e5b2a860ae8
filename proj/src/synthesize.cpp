#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nlr/image.h"

namespace nlr {
namespace {

double level_value(int level, int levels, double max_value) {
  if (levels == 1) return max_value / 2;
  return max_value * level / (levels - 1);
}

}  // namespace

Image synthesize(SynthesisKind kind, int width, int height, double max_value) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("synthesize: dimensions must be positive");
  }
  const std::size_t n = std::size_t(width) * height;
  std::vector<double> data(n);

  switch (kind.kind) {
    case SynthesisKind::Kind::kSquares: {
      if (kind.levels < 1 || std::size_t(kind.levels) > n) {
        throw std::invalid_argument("synthesize: squares needs 1 <= levels <= "
                                    "width*height");
      }
      for (std::size_t k = 0; k < n; ++k) {
        const auto band = static_cast<int>(k * kind.levels / n);
        data[k] = level_value(kind.levels - 1 - band, kind.levels, max_value);
      }
      break;
    }
    case SynthesisKind::Kind::kGradient: {
      for (std::size_t k = 0; k < n; ++k) {
        data[k] = n == 1 ? 0.0 : max_value * double(k) / double(n - 1);
      }
      break;
    }
    case SynthesisKind::Kind::kRandom: {
      if (kind.levels < 1 || std::size_t(kind.levels) > n) {
        throw std::invalid_argument("synthesize: random needs 1 <= levels <= "
                                    "width*height");
      }
      std::mt19937_64 rng(kind.seed);
      std::uniform_int_distribution<int> pick(0, kind.levels - 1);
      std::vector<int> level(n);
      for (auto& l : level) l = pick(rng);
      // Plant every level once so the native level count is exact.
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      for (int l = 0; l < kind.levels; ++l) level[order[l]] = l;
      for (std::size_t k = 0; k < n; ++k) {
        data[k] = level_value(level[k], kind.levels, max_value);
      }
      break;
    }
  }
  return Image(width, height, std::move(data), max_value);
}

}  // namespace nlr
