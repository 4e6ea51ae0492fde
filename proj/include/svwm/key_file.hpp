#ifndef SVWM_KEY_FILE_HPP
#define SVWM_KEY_FILE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "svwm/liu_tan.hpp"
#include "svwm/principal_components.hpp"

namespace svwm {

// Binary detector-key container, little-endian throughout:
//
//   magic   "SVWM" | version u8 = 1 | scheme u8 (1 = liu-tan, 2 = pc)
//   alpha   f64    | rows u32 | cols u32 | entry_count u16
//   entry   name_len u8 | name ASCII | kind u8 (1 = matrix, 2 = vector)
//           rows u32 | cols u32 | payload f64 row-major
//
// Entries appear in a fixed order: liu-tan files carry exactly
// u_w, v_w, s_cover; pc files exactly u, sigma, v, v_w. Vectors are stored
// with rows = length, cols = 1. serialize(parse(bytes)) == bytes and
// parse(serialize(keys)) == keys; doubles travel as raw IEEE-754 bits.

inline constexpr std::uint8_t kKeyFileVersion = 1;
inline constexpr std::uint8_t kSchemeLiuTan = 1;
inline constexpr std::uint8_t kSchemePc = 2;

using ParsedKeys = std::variant<LiuTanKeys, PcKeys>;

std::vector<std::uint8_t> serialize_keys(const LiuTanKeys& keys);
std::vector<std::uint8_t> serialize_keys(const PcKeys& keys);
std::vector<std::uint8_t> serialize_keys(const ParsedKeys& keys);

// Strict: rejects bad magic/version/scheme, out-of-order or missing entries,
// shape disagreements, trailing bytes, and keys violating the scheme
// invariants (orthogonality, sigma ordering, alpha > 0). Throws KeyFileError.
ParsedKeys parse_keys(std::span<const std::uint8_t> bytes);

// File-path conveniences; throw IoError on filesystem failure.
ParsedKeys load_keys(const std::string& path);
void save_keys(const std::string& path, const ParsedKeys& keys);

} // namespace svwm

#endif // SVWM_KEY_FILE_HPP
