#ifndef NLR_PGM_H_
#define NLR_PGM_H_

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nlr/image.h"

namespace nlr {

/// Parse or I/O failure. offset() is the byte position where parsing stopped,
/// or npos for failures that have no position (e.g. an unopenable file).
class PgmError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  PgmError(const std::string& what, std::size_t offset = npos);
  std::size_t offset() const { return offset_; }
  /// The message without the offset suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

enum class PgmFormat { kAscii /* P2 */, kBinary /* P5 */ };

/// Decodes P2 or P5 data with maxval <= 65535. Header comments are allowed.
/// The returned image has max_value == maxval.
Image parse_pgm(std::string_view bytes);

/// Encodes with intensities rounded half away from zero. max_value must be an
/// integer in [1, 65535].
std::string encode_pgm(const Image& img, PgmFormat format);

Image load_pgm(const std::filesystem::path& path);
void save_pgm(const Image& img, const std::filesystem::path& path,
              PgmFormat format = PgmFormat::kBinary);

}  // namespace nlr

#endif  // NLR_PGM_H_
