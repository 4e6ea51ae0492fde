#include "svwm/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "svwm/errors.hpp"

namespace svwm {

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

class HeaderReader {
public:
    HeaderReader(std::span<const std::uint8_t> bytes, std::size_t start)
        : bytes_(bytes), pos_(start) {}

    std::size_t pos() const { return pos_; }

    // Skips whitespace and # comments (which run to end of line).
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (is_pgm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    std::uint64_t read_uint(const char* field) {
        skip_separators();
        const std::size_t start = pos_;
        if (pos_ >= bytes_.size()) {
            throw ParseError(std::string("unexpected end of header reading ") + field, pos_);
        }
        if (bytes_[pos_] < '0' || bytes_[pos_] > '9') {
            throw ParseError(std::string("malformed ") + field, pos_);
        }
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFull) {
                throw ParseError(std::string(field) + " out of range", start);
            }
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates the maxval from the raster.
    void expect_raster_separator() {
        if (pos_ >= bytes_.size() || !is_pgm_space(bytes_[pos_])) {
            throw ParseError("missing whitespace before raster", pos_);
        }
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

// clamp to [0,255] then round half away from zero
std::uint8_t quantize_pixel(double v) {
    const double clamped = std::clamp(v, 0.0, 255.0);
    return static_cast<std::uint8_t>(std::llround(clamped));
}

} // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw ParseError("unsupported magic, expected P5", 0);
    }
    HeaderReader reader(bytes, 2);
    const std::uint64_t width = reader.read_uint("width");
    const std::uint64_t height = reader.read_uint("height");
    if (width == 0 || height == 0) {
        throw ParseError("zero dimension", reader.pos());
    }
    const std::uint64_t maxval = reader.read_uint("maxval");
    if (maxval == 0 || maxval > 255) {
        throw ParseError("maxval out of range, expected 1..255", reader.pos());
    }
    reader.expect_raster_separator();

    const std::size_t raster_start = reader.pos();
    const std::uint64_t expected = width * height;
    if (bytes.size() - raster_start < expected) {
        throw ParseError("truncated pixel data", bytes.size());
    }
    GrayImage img;
    img.width = static_cast<std::size_t>(width);
    img.height = static_cast<std::size_t>(height);
    img.pixels.assign(bytes.begin() + raster_start, bytes.begin() + raster_start + expected);
    return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
    const std::string header = "P5\n" + std::to_string(img.width) + " " +
                               std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

Matrix image_to_matrix(const GrayImage& img) {
    std::vector<double> data(img.pixels.size());
    std::transform(img.pixels.begin(), img.pixels.end(), data.begin(),
                   [](std::uint8_t p) { return static_cast<double>(p); });
    return Matrix(img.height, img.width, std::move(data));
}

GrayImage matrix_to_image(const Matrix& m) {
    GrayImage img;
    img.width = m.cols();
    img.height = m.rows();
    img.pixels.resize(m.size());
    std::transform(m.data().begin(), m.data().end(), img.pixels.begin(), quantize_pixel);
    return img;
}

GrayImage normalize_for_display(const Matrix& m, bool* degenerate) {
    const auto [lo_it, hi_it] = std::minmax_element(m.data().begin(), m.data().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (degenerate != nullptr) {
        *degenerate = lo == hi;
    }
    if (lo == hi) {
        GrayImage img;
        img.width = m.cols();
        img.height = m.rows();
        img.pixels.assign(m.size(), 128);
        return img;
    }
    Matrix scaled(m.rows(), m.cols());
    const double span = hi - lo;
    for (std::size_t i = 0; i < m.size(); ++i) {
        scaled.data()[i] = (m.data()[i] - lo) / span * 255.0;
    }
    return matrix_to_image(scaled);
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path + " for reading");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on " + path);
    }
    return read_pgm(bytes);
}

void save_pgm(const std::string& path, const GrayImage& img) {
    const std::vector<std::uint8_t> bytes = write_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failure on " + path);
    }
}

} // namespace svwm
