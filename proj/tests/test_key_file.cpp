#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include <doctest.h>

#include "svwm/errors.hpp"
#include "svwm/key_file.hpp"
#include "svwm/liu_tan.hpp"
#include "svwm/principal_components.hpp"
#include "test_support.hpp"

using svwm::Matrix;

namespace {

svwm::LiuTanKeys make_liutan_keys() {
    const Matrix cover = testsup::random_matrix(5, 4, 301);
    const Matrix mark = testsup::random_matrix(5, 4, 302);
    return svwm::lt_embed(cover, mark, 0.05).keys;
}

svwm::PcKeys make_pc_keys() {
    const Matrix cover = testsup::random_matrix(4, 6, 303);
    const Matrix mark = testsup::random_matrix(4, 6, 304);
    return svwm::pc_embed(cover, mark, 0.07).keys;
}

} // namespace

TEST_CASE("liu-tan keys: serialize then parse is the value identity") {
    const svwm::LiuTanKeys keys = make_liutan_keys();
    const std::vector<std::uint8_t> bytes = svwm::serialize_keys(keys);

    const svwm::ParsedKeys parsed = svwm::parse_keys(bytes);
    REQUIRE(std::holds_alternative<svwm::LiuTanKeys>(parsed));
    const auto& back = std::get<svwm::LiuTanKeys>(parsed);
    CHECK(back.u_w.data() == keys.u_w.data());
    CHECK(back.v_w.data() == keys.v_w.data());
    CHECK(back.s_cover == keys.s_cover);
    CHECK(back.alpha == keys.alpha);
    CHECK(back.rows == keys.rows);
    CHECK(back.cols == keys.cols);

    // ... and parse then serialize is the byte identity.
    CHECK(svwm::serialize_keys(parsed) == bytes);
}

TEST_CASE("pc keys: serialize then parse is the value identity") {
    const svwm::PcKeys keys = make_pc_keys();
    const std::vector<std::uint8_t> bytes = svwm::serialize_keys(keys);

    const svwm::ParsedKeys parsed = svwm::parse_keys(bytes);
    REQUIRE(std::holds_alternative<svwm::PcKeys>(parsed));
    const auto& back = std::get<svwm::PcKeys>(parsed);
    CHECK(back.u.data() == keys.u.data());
    CHECK(back.sigma == keys.sigma);
    CHECK(back.v.data() == keys.v.data());
    CHECK(back.v_w.data() == keys.v_w.data());
    CHECK(back.alpha == keys.alpha);

    CHECK(svwm::serialize_keys(parsed) == bytes);
}

TEST_CASE("header layout is exactly as documented") {
    const svwm::LiuTanKeys keys = make_liutan_keys();
    const std::vector<std::uint8_t> bytes = svwm::serialize_keys(keys);
    REQUIRE(bytes.size() >= 24);
    CHECK(bytes[0] == 'S');
    CHECK(bytes[1] == 'V');
    CHECK(bytes[2] == 'W');
    CHECK(bytes[3] == 'M');
    CHECK(bytes[4] == svwm::kKeyFileVersion);
    CHECK(bytes[5] == svwm::kSchemeLiuTan);
    // rows=5 (little-endian u32 at offset 14), cols=4 (offset 18), count=3 (u16 at 22)
    CHECK(bytes[14] == 5);
    CHECK(bytes[18] == 4);
    CHECK(bytes[22] == 3);
    CHECK(svwm::serialize_keys(make_pc_keys())[5] == svwm::kSchemePc);
}

TEST_CASE("parse rejects corrupted files") {
    const std::vector<std::uint8_t> good = svwm::serialize_keys(make_liutan_keys());

    SUBCASE("bad magic") {
        std::vector<std::uint8_t> bad = good;
        bad[0] = 'X';
        CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
    }
    SUBCASE("unsupported version") {
        std::vector<std::uint8_t> bad = good;
        bad[4] = 9;
        CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
    }
    SUBCASE("unknown scheme byte") {
        std::vector<std::uint8_t> bad = good;
        bad[5] = 3;
        CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
    }
    SUBCASE("non-positive alpha") {
        std::vector<std::uint8_t> bad = good;
        for (int i = 6; i < 14; ++i) {
            bad[i] = 0; // alpha = +0.0
        }
        CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
    }
    SUBCASE("truncation at every prefix boundary") {
        for (std::size_t len : {0UL, 3UL, 12UL, 23UL, 40UL, good.size() - 1}) {
            const std::vector<std::uint8_t> bad(good.begin(), good.begin() + len);
            CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
        }
    }
    SUBCASE("trailing garbage") {
        std::vector<std::uint8_t> bad = good;
        bad.push_back(0);
        CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
    }
    SUBCASE("wrong entry name") {
        std::vector<std::uint8_t> bad = good;
        bad[25] = 'x'; // first entry name "u_w" begins after the 24-byte preamble + length byte
        CHECK_THROWS_AS(svwm::parse_keys(bad), svwm::KeyFileError);
    }
}

TEST_CASE("parse enforces the key invariants") {
    SUBCASE("non-orthogonal u_w") {
        svwm::LiuTanKeys keys = make_liutan_keys();
        keys.u_w(0, 0) += 0.5;
        CHECK_THROWS_AS(svwm::parse_keys(svwm::serialize_keys(keys)), svwm::KeyFileError);
    }
    SUBCASE("increasing s_cover") {
        svwm::LiuTanKeys keys = make_liutan_keys();
        std::swap(keys.s_cover.front(), keys.s_cover.back());
        CHECK_THROWS_AS(svwm::parse_keys(svwm::serialize_keys(keys)), svwm::KeyFileError);
    }
    SUBCASE("negative singular value") {
        svwm::PcKeys keys = make_pc_keys();
        keys.sigma.back() = -1.0;
        CHECK_THROWS_AS(svwm::parse_keys(svwm::serialize_keys(keys)), svwm::KeyFileError);
    }
    SUBCASE("non-orthogonal v_w in pc keys") {
        svwm::PcKeys keys = make_pc_keys();
        keys.v_w(0, 1) += 0.25;
        CHECK_THROWS_AS(svwm::parse_keys(svwm::serialize_keys(keys)), svwm::KeyFileError);
    }
}

TEST_CASE("load and save round trip through the filesystem") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "svwm_key_test";
    fs::create_directories(dir);
    const std::string path = (dir / "keys.bin").string();

    const svwm::ParsedKeys keys = make_pc_keys();
    svwm::save_keys(path, keys);
    const svwm::ParsedKeys loaded = svwm::load_keys(path);
    CHECK(svwm::serialize_keys(loaded) == svwm::serialize_keys(keys));

    CHECK_THROWS_AS(svwm::load_keys((dir / "missing.bin").string()), svwm::IoError);
    fs::remove_all(dir);
}
