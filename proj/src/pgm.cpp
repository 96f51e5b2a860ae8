#include "nlr/pgm.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nlr {

PgmError::PgmError(const std::string& what, std::size_t offset)
    : std::runtime_error(offset == npos
                             ? what
                             : what + " (at byte " + std::to_string(offset) +
                                   ")"),
      detail_(what),
      offset_(offset) {}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  // Skips whitespace and '#' comments that run to end of line.
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_unsigned(const char* what) {
    skip_separators();
    const std::size_t start = pos_;
    if (pos_ >= bytes_.size()) {
      throw PgmError(std::string("truncated header: missing ") + what, pos_);
    }
    unsigned long value = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFul) {
        throw PgmError(std::string("value too large for ") + what, start);
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw PgmError(std::string("malformed header: expected ") + what, start);
    }
    return value;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2) throw PgmError("truncated magic number", 0);
  if (bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw PgmError("unsupported magic number '" +
                       std::string(bytes.substr(0, 2)) + "'",
                   0);
  }
  const bool binary = bytes[1] == '5';

  HeaderReader header(bytes.substr(2));
  const std::size_t base = 2;
  const unsigned long width = header.read_unsigned("width");
  const unsigned long height = header.read_unsigned("height");
  const std::size_t maxval_pos = base + header.pos();
  const unsigned long maxval = header.read_unsigned("maxval");
  if (width == 0 || height == 0) {
    throw PgmError("malformed header: zero dimension", base + header.pos());
  }
  if (width > 1u << 20 || height > 1u << 20) {
    throw PgmError("malformed header: dimension too large", base);
  }
  if (maxval == 0 || maxval > 65535) {
    throw PgmError("maxval must be in [1, 65535]", maxval_pos);
  }

  const std::size_t count = std::size_t(width) * height;
  std::vector<double> data(count);
  std::size_t pos = base + header.pos();

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (pos >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      throw PgmError("malformed header: expected whitespace after maxval", pos);
    }
    ++pos;
    const std::size_t sample = maxval < 256 ? 1 : 2;
    if (bytes.size() - pos < count * sample) {
      throw PgmError("truncated payload: expected " +
                         std::to_string(count * sample) + " bytes, found " +
                         std::to_string(bytes.size() - pos),
                     bytes.size());
    }
    for (std::size_t k = 0; k < count; ++k) {
      unsigned value = static_cast<unsigned char>(bytes[pos]);
      if (sample == 2) {
        value = (value << 8) | static_cast<unsigned char>(bytes[pos + 1]);
      }
      if (value > maxval) {
        throw PgmError("sample exceeds maxval", pos);
      }
      data[k] = value;
      pos += sample;
    }
  } else {
    HeaderReader body(bytes.substr(pos));
    for (std::size_t k = 0; k < count; ++k) {
      body.skip_separators();
      const std::size_t at = pos + body.pos();
      if (at >= bytes.size()) {
        throw PgmError("truncated payload: expected " + std::to_string(count) +
                           " samples, found " + std::to_string(k),
                       at);
      }
      const unsigned long value = body.read_unsigned("sample");
      if (value > maxval) throw PgmError("sample exceeds maxval", at);
      data[k] = static_cast<double>(value);
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height),
               std::move(data), static_cast<double>(maxval));
}

std::string encode_pgm(const Image& img, PgmFormat format) {
  const double q = img.max_value();
  if (q != std::floor(q) || q < 1 || q > 65535) {
    throw std::invalid_argument(
        "encode_pgm: max_value must be an integer in [1, 65535]");
  }
  const auto maxval = static_cast<unsigned>(q);
  std::ostringstream out;
  out << (format == PgmFormat::kBinary ? "P5" : "P2") << '\n'
      << img.width() << ' ' << img.height() << '\n'
      << maxval << '\n';

  auto sample = [&](std::size_t k) {
    // std::round rounds half away from zero.
    const double r = std::round(img[k]);
    return static_cast<unsigned>(std::min(r, double(maxval)));
  };

  if (format == PgmFormat::kBinary) {
    for (std::size_t k = 0; k < img.size(); ++k) {
      const unsigned v = sample(k);
      if (maxval > 255) out.put(static_cast<char>(v >> 8));
      out.put(static_cast<char>(v & 0xFF));
    }
  } else {
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        if (x) out << ' ';
        out << sample(std::size_t(y) * img.width() + x);
      }
      out << '\n';
    }
  }
  return std::move(out).str();
}

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  try {
    return parse_pgm(bytes);
  } catch (const PgmError& e) {
    throw PgmError(path.string() + ": " + e.detail(), e.offset());
  }
}

void save_pgm(const Image& img, const std::filesystem::path& path,
              PgmFormat format) {
  const std::string bytes = encode_pgm(img, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PgmError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw PgmError("write failed for '" + path.string() + "'");
}

}  // namespace nlr
