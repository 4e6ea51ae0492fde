#include "svwm/key_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "svwm/errors.hpp"
#include "svwm/svd.hpp"

namespace svwm {

namespace {

constexpr double kKeyOrthogonalityTol = 1e-10;

class Writer {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }

    void u16(std::uint16_t v) {
        u8(static_cast<std::uint8_t>(v & 0xFF));
        u8(static_cast<std::uint8_t>(v >> 8));
    }

    void u32(std::uint32_t v) {
        for (int shift = 0; shift < 32; shift += 8) {
            u8(static_cast<std::uint8_t>((v >> shift) & 0xFF));
        }
    }

    void f64(double v) {
        const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        for (int shift = 0; shift < 64; shift += 8) {
            u8(static_cast<std::uint8_t>((bits >> shift) & 0xFF));
        }
    }

    void ascii(const std::string& s) {
        bytes_.insert(bytes_.end(), s.begin(), s.end());
    }

    void matrix_entry(const std::string& name, const Matrix& m) {
        entry_header(name, 1, m.rows(), m.cols());
        for (double v : m.data()) {
            f64(v);
        }
    }

    void vector_entry(const std::string& name, const std::vector<double>& v) {
        entry_header(name, 2, v.size(), 1);
        for (double x : v) {
            f64(x);
        }
    }

    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    void entry_header(const std::string& name, std::uint8_t kind, std::size_t rows,
                      std::size_t cols) {
        u8(static_cast<std::uint8_t>(name.size()));
        ascii(name);
        u8(kind);
        u32(static_cast<std::uint32_t>(rows));
        u32(static_cast<std::uint32_t>(cols));
    }

    std::vector<std::uint8_t> bytes_;
};

void write_preamble(Writer& w, std::uint8_t scheme, double alpha, std::size_t rows,
                    std::size_t cols, std::uint16_t entry_count) {
    w.ascii("SVWM");
    w.u8(kKeyFileVersion);
    w.u8(scheme);
    w.f64(alpha);
    w.u32(static_cast<std::uint32_t>(rows));
    w.u32(static_cast<std::uint32_t>(cols));
    w.u16(entry_count);
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                          static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8;
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 4;
        return v;
    }

    double f64() {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 8;
        return std::bit_cast<double>(bits);
    }

    std::string ascii(std::size_t len) {
        need(len);
        std::string s(bytes_.begin() + pos_, bytes_.begin() + pos_ + len);
        pos_ += len;
        return s;
    }

    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t count) {
        if (bytes_.size() - pos_ < count) {
            throw KeyFileError("key file truncated at byte " + std::to_string(pos_));
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

Matrix read_matrix_entry(Reader& r, const std::string& name, std::size_t rows,
                         std::size_t cols) {
    const std::uint8_t name_len = r.u8();
    const std::string found = r.ascii(name_len);
    if (found != name) {
        throw KeyFileError("expected entry '" + name + "', found '" + found + "'");
    }
    if (r.u8() != 1) {
        throw KeyFileError("entry '" + name + "' must be a matrix");
    }
    const std::uint32_t er = r.u32();
    const std::uint32_t ec = r.u32();
    if (er != rows || ec != cols) {
        throw KeyFileError("entry '" + name + "' has shape " + std::to_string(er) + "x" +
                           std::to_string(ec) + ", expected " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    std::vector<double> data(static_cast<std::size_t>(er) * ec);
    for (double& v : data) {
        v = r.f64();
    }
    try {
        return Matrix(rows, cols, std::move(data));
    } catch (const PreconditionError& e) {
        throw KeyFileError("entry '" + name + "': " + e.what());
    }
}

std::vector<double> read_vector_entry(Reader& r, const std::string& name, std::size_t len) {
    const std::uint8_t name_len = r.u8();
    const std::string found = r.ascii(name_len);
    if (found != name) {
        throw KeyFileError("expected entry '" + name + "', found '" + found + "'");
    }
    if (r.u8() != 2) {
        throw KeyFileError("entry '" + name + "' must be a vector");
    }
    const std::uint32_t er = r.u32();
    const std::uint32_t ec = r.u32();
    if (er != len || ec != 1) {
        throw KeyFileError("entry '" + name + "' has shape " + std::to_string(er) + "x" +
                           std::to_string(ec) + ", expected " + std::to_string(len) + "x1");
    }
    std::vector<double> data(len);
    for (double& v : data) {
        v = r.f64();
        if (!std::isfinite(v)) {
            throw KeyFileError("entry '" + name + "' contains a non-finite value");
        }
    }
    return data;
}

void require_orthogonal(const Matrix& m, const char* name) {
    if (orthogonality_error(m) > kKeyOrthogonalityTol) {
        throw KeyFileError(std::string("entry '") + name + "' is not orthogonal");
    }
}

void require_singular_values(const std::vector<double>& s, const char* name) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0.0) {
            throw KeyFileError(std::string("entry '") + name + "' has a negative value");
        }
        if (i > 0 && s[i] > s[i - 1]) {
            throw KeyFileError(std::string("entry '") + name + "' is not nonincreasing");
        }
    }
}

} // namespace

std::vector<std::uint8_t> serialize_keys(const LiuTanKeys& keys) {
    Writer w;
    write_preamble(w, kSchemeLiuTan, keys.alpha, keys.rows, keys.cols, 3);
    w.matrix_entry("u_w", keys.u_w);
    w.matrix_entry("v_w", keys.v_w);
    w.vector_entry("s_cover", keys.s_cover);
    return w.take();
}

std::vector<std::uint8_t> serialize_keys(const PcKeys& keys) {
    Writer w;
    write_preamble(w, kSchemePc, keys.alpha, keys.rows, keys.cols, 4);
    w.matrix_entry("u", keys.u);
    w.vector_entry("sigma", keys.sigma);
    w.matrix_entry("v", keys.v);
    w.matrix_entry("v_w", keys.v_w);
    return w.take();
}

std::vector<std::uint8_t> serialize_keys(const ParsedKeys& keys) {
    return std::visit([](const auto& k) { return serialize_keys(k); }, keys);
}

ParsedKeys parse_keys(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    if (r.ascii(4) != "SVWM") {
        throw KeyFileError("bad magic, not a key file");
    }
    const std::uint8_t version = r.u8();
    if (version != kKeyFileVersion) {
        throw KeyFileError("unsupported key file version " + std::to_string(version));
    }
    const std::uint8_t scheme = r.u8();
    if (scheme != kSchemeLiuTan && scheme != kSchemePc) {
        throw KeyFileError("unknown scheme byte " + std::to_string(scheme));
    }
    const double alpha = r.f64();
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw KeyFileError("alpha must be positive and finite");
    }
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    if (rows == 0 || cols == 0) {
        throw KeyFileError("key shape has a zero dimension");
    }
    const std::size_t diag_len = std::min(rows, cols);
    const std::uint16_t entry_count = r.u16();

    if (scheme == kSchemeLiuTan) {
        if (entry_count != 3) {
            throw KeyFileError("liu-tan key file must carry 3 entries, found " +
                               std::to_string(entry_count));
        }
        Matrix u_w = read_matrix_entry(r, "u_w", rows, rows);
        Matrix v_w = read_matrix_entry(r, "v_w", cols, cols);
        std::vector<double> s_cover = read_vector_entry(r, "s_cover", diag_len);
        if (!r.exhausted()) {
            throw KeyFileError("trailing bytes after last entry");
        }
        require_orthogonal(u_w, "u_w");
        require_orthogonal(v_w, "v_w");
        require_singular_values(s_cover, "s_cover");
        return LiuTanKeys{std::move(u_w), std::move(v_w), std::move(s_cover), alpha, rows, cols};
    }

    if (entry_count != 4) {
        throw KeyFileError("pc key file must carry 4 entries, found " +
                           std::to_string(entry_count));
    }
    Matrix u = read_matrix_entry(r, "u", rows, rows);
    std::vector<double> sigma = read_vector_entry(r, "sigma", diag_len);
    Matrix v = read_matrix_entry(r, "v", cols, cols);
    Matrix v_w = read_matrix_entry(r, "v_w", cols, cols);
    if (!r.exhausted()) {
        throw KeyFileError("trailing bytes after last entry");
    }
    require_orthogonal(u, "u");
    require_orthogonal(v, "v");
    require_orthogonal(v_w, "v_w");
    require_singular_values(sigma, "sigma");
    return PcKeys{std::move(u), std::move(sigma), std::move(v), std::move(v_w),
                  alpha,        rows,             cols};
}

ParsedKeys load_keys(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path + " for reading");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on " + path);
    }
    return parse_keys(bytes);
}

void save_keys(const std::string& path, const ParsedKeys& keys) {
    const std::vector<std::uint8_t> bytes = serialize_keys(keys);
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
