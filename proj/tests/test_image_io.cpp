#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "nlr/image.h"
#include "nlr/pgm.h"

using namespace nlr;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nlr_test_" + name);
}

Image random_image(std::mt19937_64& rng, int w, int h, int max_level) {
  std::uniform_int_distribution<int> d(0, max_level);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (double& x : v) x = d(rng);
  return Image(w, h, v);
}

}  // namespace

TEST_CASE("Image validates its invariants") {
  CHECK_THROWS_AS(Image(2, 2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Image(0, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Image(1, 1, {256}), std::invalid_argument);
  CHECK_THROWS_AS(Image(1, 1, {-0.5}), std::invalid_argument);
  const Image img(2, 3, {0, 1, 2, 3, 4, 5});
  CHECK(img.measure() == 6);
  CHECK(img.at(1, 2) == 5);
}

TEST_CASE("P2 with comments loads losslessly") {
  const Image img = parse_pgm("P2\n# a comment\n2 2\n# another\n15\n0 5\n10 15\n");
  CHECK(img.max_value() == 15);
  CHECK(img.width() == 2);
  CHECK(std::vector<double>(img.pixels().begin(), img.pixels().end()) ==
        std::vector<double>{0, 5, 10, 15});
}

TEST_CASE("P5 with constant bytes is a constant image") {
  std::string bytes = "P5\n3 2\n255\n";
  bytes.append(6, static_cast<char>(128));
  const Image img = parse_pgm(bytes);
  CHECK(img == Image::filled(3, 2, 128));
}

TEST_CASE("16-bit P5 samples are big-endian") {
  std::string bytes = "P5 2 1 65535\n";
  bytes += std::string("\x01\x02\xff\xfe", 4);
  const Image img = parse_pgm(bytes);
  CHECK(img[0] == 0x0102);
  CHECK(img[1] == 0xfffe);
  CHECK(img.max_value() == 65535);
}

TEST_CASE("PGM errors carry byte offsets") {
  try {
    parse_pgm("P7\n1 1\n255\n\n");
    FAIL("expected an error");
  } catch (const PgmError& e) {
    CHECK(std::string(e.what()).find("unsupported magic") != std::string::npos);
    CHECK(e.offset() == 0);
  }
  try {
    parse_pgm("P5\n2 2\n255\nab");
    FAIL("expected an error");
  } catch (const PgmError& e) {
    CHECK(std::string(e.what()).find("truncated") != std::string::npos);
    CHECK(e.offset() != PgmError::npos);
  }
  CHECK_THROWS_AS(parse_pgm("P2\n1 1\n10\n11\n"), PgmError);
  CHECK_THROWS_AS(parse_pgm("P2\nx 1\n10\n1\n"), PgmError);
  CHECK_THROWS_AS(parse_pgm("P2\n1 1\n70000\n1\n"), PgmError);
  CHECK_THROWS_AS(load_pgm(temp_path("does_not_exist.pgm")), PgmError);
}

TEST_CASE("save rounds half away from zero") {
  // Intensities above Q cannot exist: the Image invariant rejects them.
  CHECK_THROWS_AS(Image(1, 1, {255.4}), std::invalid_argument);
  const Image img(4, 1, {254.6, 0.5, 1.49, 254.5});
  const Image back = parse_pgm(encode_pgm(img, PgmFormat::kAscii));
  CHECK(back[0] == 255);
  CHECK(back[1] == 1);
  CHECK(back[2] == 1);
  CHECK(back[3] == 255);
}

TEST_CASE("constant image payload is all 128") {
  const std::string bytes = encode_pgm(Image::filled(4, 3, 128), PgmFormat::kBinary);
  const std::string header = "P5\n4 3\n255\n";
  REQUIRE(bytes.size() == header.size() + 12);
  CHECK(bytes.substr(0, header.size()) == header);
  CHECK(std::all_of(bytes.begin() + header.size(), bytes.end(),
                    [](char c) { return static_cast<unsigned char>(c) == 128; }));
}

TEST_CASE("integer images round-trip through both formats and files") {
  std::mt19937_64 rng(3);
  for (PgmFormat f : {PgmFormat::kAscii, PgmFormat::kBinary}) {
    const Image img = random_image(rng, 7, 5, 255);
    CHECK(parse_pgm(encode_pgm(img, f)) == img);
    const auto path = temp_path("roundtrip.pgm");
    save_pgm(img, path, f);
    CHECK(load_pgm(path) == img);
    std::filesystem::remove(path);
  }
  std::vector<double> deep(6);
  for (std::size_t k = 0; k < deep.size(); ++k) deep[k] = 10000.0 * k + 3;
  const Image img16(3, 2, deep, 65535);
  CHECK(parse_pgm(encode_pgm(img16, PgmFormat::kBinary)) == img16);
}

TEST_CASE("native quantization") {
  const QuantizedImage q = quantize(Image(4, 1, {3, 1, 2, 2}));
  CHECK(std::vector<double>(q.levels().begin(), q.levels().end()) ==
        std::vector<double>{3, 2, 1});
  CHECK(std::vector<std::int64_t>(q.counts().begin(), q.counts().end()) ==
        std::vector<std::int64_t>{1, 2, 1});

  const QuantizedImage c = quantize(Image::filled(5, 3, 42));
  CHECK(c.num_levels() == 1);
  CHECK(c.counts()[0] == 15);
}

TEST_CASE("uniform quantization of [0,85,170,255] into 4 bins") {
  const QuantizedImage q = quantize(Image(4, 1, {0, 85, 170, 255}),
                                    QuantizeMode::uniform(4));
  CHECK(std::vector<double>(q.levels().begin(), q.levels().end()) ==
        std::vector<double>{223.125, 159.375, 95.625, 31.875});
  for (std::int64_t c : q.counts()) CHECK(c == 1);
}

TEST_CASE("uniform quantization properties on random images") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Image img = random_image(rng, 9, 6, 255);
    const int bins = 1 + trial % 13;
    const QuantizedImage q = quantize(img, QuantizeMode::uniform(bins));
    const auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
    const double bound = (*hi - *lo) / (2.0 * bins);
    std::int64_t total = 0;
    for (std::int64_t c : q.counts()) total += c;
    CHECK(total == static_cast<std::int64_t>(img.size()));
    CHECK(q.num_levels() <= static_cast<std::size_t>(bins));
    for (std::size_t k = 0; k < img.size(); ++k) {
      CHECK(std::abs(img[k] - q.value(k)) <= bound + 1e-12);
    }
  }
}

TEST_CASE("native quantization reconstructs exactly") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Image img = random_image(rng, 6, 6, 9);
    const QuantizedImage q = quantize(img);
    CHECK(q.to_image() == img);
    const std::set<double> distinct(img.pixels().begin(), img.pixels().end());
    CHECK(q.num_levels() == distinct.size());
  }
}

TEST_CASE("synthesis") {
  const QuantizedImage sq = quantize(synthesize(SynthesisKind::squares(2), 2, 2));
  CHECK(sq.num_levels() == 2);
  CHECK(sq.counts()[0] == 2);
  CHECK(sq.counts()[1] == 2);

  const Image g = synthesize(SynthesisKind::gradient(), 4, 1);
  CHECK(quantize(g).num_levels() == 4);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);

  const Image a = synthesize(SynthesisKind::random(7, 5), 8, 8);
  CHECK(a == synthesize(SynthesisKind::random(7, 5), 8, 8));
  CHECK(quantize(a).num_levels() == 5);
  CHECK_FALSE(a == synthesize(SynthesisKind::random(8, 5), 8, 8));

  CHECK_THROWS_AS(synthesize(SynthesisKind::random(1, 5), 2, 2),
                  std::invalid_argument);
}
