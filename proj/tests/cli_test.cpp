// Integration tests that drive the installed CLI binary as a subprocess.
// The binary path arrives via the SVWM_CLI_PATH compile definition.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "svwm/image.hpp"
#include "svwm/key_file.hpp"
#include "svwm/matrix.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::vector<std::uint8_t> slurp_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

struct CliEnv {
    fs::path dir;
    std::string cover;
    std::string cover_dim;
    std::string mark;
    std::string ref;
    std::string small_mark;
    std::string dot;

    CliEnv() {
        dir = fs::temp_directory_path() /
              ("svwm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        cover = write_field("cover.pgm", 128, 11);
        mark = write_field("mark.pgm", 128, 22);
        ref = write_field("ref.pgm", 128, 33);
        small_mark = write_field("small_mark.pgm", 16, 44);

        // Half-contrast cover: leaves headroom so embedding at alpha = 0.1
        // cannot saturate pixels on the way through the 8-bit export.
        svwm::Matrix dim = testsup::natural_field(128, 11);
        for (double& v : dim.data()) {
            v = 128.0 + 0.5 * (v - 128.0);
        }
        cover_dim = (dir / "cover_dim.pgm").string();
        svwm::save_pgm(cover_dim, svwm::matrix_to_image(dim));
        svwm::GrayImage one;
        one.width = 1;
        one.height = 1;
        one.pixels = {200};
        dot = (dir / "dot.pgm").string();
        svwm::save_pgm(dot, one);
    }

    ~CliEnv() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }

    std::string write_field(const char* name, std::size_t n, std::uint64_t seed) {
        const std::string path = (dir / name).string();
        svwm::save_pgm(path, svwm::matrix_to_image(testsup::natural_field(n, seed)));
        return path;
    }

    std::string path(const char* name) const { return (dir / name).string(); }
};

CliEnv& env() {
    static CliEnv e;
    return e;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_file = env().dir / "stdout.txt";
    const fs::path err_file = env().dir / "stderr.txt";
    const std::string cmd = std::string("'") + SVWM_CLI_PATH + "' " + args + " > '" +
                            out_file.string() + "' 2> '" + err_file.string() + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

// Pulls the numeric value following "name=" from a stdout dump.
double metric_value(const std::string& out, const std::string& name) {
    const std::string needle = name + "=";
    const std::size_t at = out.find(needle);
    REQUIRE(at != std::string::npos);
    return std::strtod(out.c_str() + at + needle.size(), nullptr);
}

} // namespace

TEST_CASE("embed/extract round trip through 8-bit files") {
    const auto& e = env();
    for (const std::string scheme : {"liutan", "pc"}) {
        const std::string wm = e.path(("rt_" + scheme + ".pgm").c_str());
        const std::string key = e.path(("rt_" + scheme + ".key").c_str());
        const RunResult embed = run_cli("embed " + scheme + " '" + e.cover_dim + "' '" + e.mark +
                                        "' '" + wm + "' '" + key + "' --alpha 0.1");
        REQUIRE(embed.code == 0);
        CHECK(metric_value(embed.out, "psnr_db") >= 20.0);

        const std::string out_mark = e.path(("rt_out_" + scheme + ".pgm").c_str());
        const RunResult extract = run_cli("extract '" + wm + "' '" + key + "' '" + out_mark +
                                          "' --reference '" + e.mark + "'");
        REQUIRE(extract.code == 0);
        CHECK(metric_value(extract.out, "ncc") >= 0.99);
        CHECK(svwm::load_pgm(out_mark).width == 128);
    }
}

TEST_CASE("extract without a reference skips the self check") {
    const auto& e = env();
    const std::string wm = e.path("skip.pgm");
    const std::string key = e.path("skip.key");
    REQUIRE(run_cli("embed liutan '" + e.cover + "' '" + e.mark + "' '" + wm + "' '" + key +
                    "'").code == 0);
    const RunResult r = run_cli("extract '" + wm + "' '" + key + "' '" + e.path("skip_out.pgm") +
                                "'");
    CHECK(r.code == 0);
    CHECK(r.out.find("ncc_self_check=skipped") != std::string::npos);
}

TEST_CASE("forged keys pull a never-embedded reference out of a liu-tan image") {
    const auto& e = env();
    const std::string wm = e.path("attack_wm.pgm");
    const std::string key = e.path("attack_honest.key");
    const std::string forged = e.path("attack_forged.key");
    REQUIRE(run_cli("embed liutan '" + e.cover + "' '" + e.mark + "' '" + wm + "' '" + key +
                    "'").code == 0);
    REQUIRE(run_cli("forge '" + e.cover + "' '" + e.ref + "' '" + forged + "'").code == 0);

    const RunResult r = run_cli("extract '" + wm + "' '" + forged + "' '" +
                                e.path("attack_out.pgm") + "' --reference '" + e.ref + "'");
    REQUIRE(r.code == 0);
    const double ncc_liutan = metric_value(r.out, "ncc");
    CHECK(ncc_liutan >= 0.8);

    // The same forged key applied to a pc-watermarked copy of the cover scores
    // strictly lower: the pc scheme does not hand the reference back.
    const std::string pc_wm = e.path("attack_pc_wm.pgm");
    REQUIRE(run_cli("embed pc '" + e.cover + "' '" + e.mark + "' '" + pc_wm + "' '" +
                    e.path("attack_pc.key") + "'").code == 0);
    const RunResult rp = run_cli("extract '" + pc_wm + "' '" + forged + "' '" +
                                 e.path("attack_pc_out.pgm") + "' --reference '" + e.ref + "'");
    REQUIRE(rp.code == 0);
    CHECK(metric_value(rp.out, "ncc") < ncc_liutan - 0.1);

    // The forged key file itself survives a parse/serialize round trip.
    const std::vector<std::uint8_t> bytes = slurp_bytes(forged);
    CHECK(svwm::serialize_keys(svwm::parse_keys(bytes)) == bytes);
}

TEST_CASE("pc reference search separates matched from forged references") {
    const auto& e = env();
    const std::string wm = e.path("pc_wm.pgm");
    const std::string key = e.path("pc.key");
    REQUIRE(run_cli("embed pc '" + e.cover_dim + "' '" + e.mark + "' '" + wm + "' '" + key +
                    "' --alpha 0.1").code == 0);

    const RunResult matched = run_cli("search '" + wm + "' '" + key + "' '" + e.mark + "'");
    REQUIRE(matched.code == 0);
    CHECK(metric_value(matched.out, "ncc") >= 0.99);

    const std::string found = e.path("searched.pgm");
    const RunResult wrong =
        run_cli("search '" + wm + "' '" + key + "' '" + e.ref + "' --out '" + found + "'");
    REQUIRE(wrong.code == 0);
    CHECK(metric_value(wrong.out, "ncc") <= 0.2);
    CHECK(fs::exists(found));

    // Searching an image that carries no embedding warns on stderr.
    const RunResult empty =
        run_cli("search '" + e.cover_dim + "' '" + key + "' '" + e.ref + "'");
    CHECK(empty.code == 0);
    CHECK(empty.err.find("no embedding") != std::string::npos);

    // liu-tan keys cannot drive a search.
    const std::string lt_key = e.path("lt_for_search.key");
    REQUIRE(run_cli("embed liutan '" + e.cover + "' '" + e.mark + "' '" +
                    e.path("lt_for_search.pgm") + "' '" + lt_key + "'").code == 0);
    const RunResult bad = run_cli("search '" + wm + "' '" + lt_key + "' '" + e.ref + "'");
    CHECK(bad.code == 5);
    CHECK(bad.err.find("search requires pc keys") != std::string::npos);
}

TEST_CASE("distort subcommand") {
    const auto& e = env();
    SUBCASE("gaussian sigma zero is byte-identical") {
        const std::string out = e.path("noise0.pgm");
        REQUIRE(run_cli("distort gaussian '" + e.cover + "' '" + out + "' --sigma 0").code == 0);
        CHECK(slurp(out) == slurp(e.cover));
    }
    SUBCASE("gaussian is deterministic per seed") {
        const std::string a = e.path("noise_a.pgm");
        const std::string b = e.path("noise_b.pgm");
        REQUIRE(run_cli("distort gaussian '" + e.cover + "' '" + a +
                        "' --sigma 5 --seed 9").code == 0);
        REQUIRE(run_cli("distort gaussian '" + e.cover + "' '" + b +
                        "' --sigma 5 --seed 9").code == 0);
        CHECK(slurp(a) == slurp(b));
    }
    SUBCASE("gaussian without sigma is a precondition failure") {
        CHECK(run_cli("distort gaussian '" + e.cover + "' '" + e.path("x.pgm") + "'").code == 3);
    }
    SUBCASE("full-frame crop with zero fill blacks the image out") {
        const std::string out = e.path("black.pgm");
        REQUIRE(run_cli("distort crop '" + e.cover + "' '" + out +
                        "' --top 0 --left 0 --height 128 --width 128").code == 0);
        const svwm::GrayImage img = svwm::load_pgm(out);
        for (std::uint8_t p : img.pixels) {
            CHECK(p == 0);
        }
    }
    SUBCASE("crop without the full rectangle is a precondition failure") {
        CHECK(run_cli("distort crop '" + e.cover + "' '" + e.path("x.pgm") +
                      "' --top 0 --left 0").code == 3);
    }
    SUBCASE("quantize of an 8-bit file is byte-identical") {
        const std::string out = e.path("req.pgm");
        REQUIRE(run_cli("distort quantize '" + e.cover + "' '" + out + "'").code == 0);
        CHECK(slurp(out) == slurp(e.cover));
    }
}

TEST_CASE("metrics subcommand") {
    const auto& e = env();
    const RunResult same = run_cli("metrics '" + e.cover + "' '" + e.cover + "'");
    REQUIRE(same.code == 0);
    CHECK(same.out.find("psnr_db=inf") != std::string::npos);
    CHECK(metric_value(same.out, "ncc") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(metric_value(same.out, "mse") == 0.0);

    const RunResult diff = run_cli("metrics '" + e.cover + "' '" + e.mark + "'");
    REQUIRE(diff.code == 0);
    CHECK(metric_value(diff.out, "mse") > 0.0);

    CHECK(run_cli("metrics '" + e.cover + "' '" + e.small_mark + "'").code == 3);
}

TEST_CASE("failure exit codes") {
    const auto& e = env();
    SUBCASE("missing input file") {
        CHECK(run_cli("embed liutan '" + e.path("absent.pgm") + "' '" + e.mark + "' '" +
                      e.path("o.pgm") + "' '" + e.path("o.key") + "'").code == 2);
    }
    SUBCASE("malformed image") {
        const std::string bad = e.path("bad.pgm");
        std::ofstream(bad, std::ios::binary) << "P6\n2 2\n255\n";
        CHECK(run_cli("metrics '" + bad + "' '" + bad + "'").code == 2);
    }
    SUBCASE("zero alpha") {
        const RunResult r = run_cli("embed liutan '" + e.cover + "' '" + e.mark + "' '" +
                                    e.path("o.pgm") + "' '" + e.path("o.key") +
                                    "' --alpha 0");
        CHECK(r.code == 3);
        CHECK(r.err.find("alpha") != std::string::npos);
    }
    SUBCASE("mismatched mark size") {
        CHECK(run_cli("embed liutan '" + e.cover + "' '" + e.small_mark + "' '" +
                      e.path("o.pgm") + "' '" + e.path("o.key") + "'").code == 3);
    }
    SUBCASE("truncated key file") {
        const std::string key = e.path("whole.key");
        REQUIRE(run_cli("embed liutan '" + e.cover + "' '" + e.mark + "' '" +
                        e.path("whole.pgm") + "' '" + key + "'").code == 0);
        const std::vector<std::uint8_t> bytes = slurp_bytes(key);
        const std::string cut = e.path("cut.key");
        std::ofstream(cut, std::ios::binary)
            .write(reinterpret_cast<const char*>(bytes.data()), 40);
        CHECK(run_cli("extract '" + e.path("whole.pgm") + "' '" + cut + "' '" +
                      e.path("o.pgm") + "'").code == 5);
    }
    SUBCASE("wrong scheme byte") {
        const std::string key = e.path("whole2.key");
        REQUIRE(run_cli("embed liutan '" + e.cover + "' '" + e.mark + "' '" +
                        e.path("whole2.pgm") + "' '" + key + "'").code == 0);
        std::vector<std::uint8_t> bytes = slurp_bytes(key);
        bytes[5] = 3;
        const std::string patched = e.path("patched.key");
        std::ofstream(patched, std::ios::binary)
            .write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()));
        CHECK(run_cli("extract '" + e.path("whole2.pgm") + "' '" + patched + "' '" +
                      e.path("o.pgm") + "'").code == 5);
    }
    SUBCASE("usage errors") {
        CHECK(run_cli("").code == 1);
        CHECK(run_cli("embed bogus a b c d").code == 1);
        CHECK(run_cli("metrics only_one.pgm").code == 1);
    }
}

TEST_CASE("re-running a command produces byte-identical outputs") {
    const auto& e = env();
    for (const std::string scheme : {"liutan", "pc"}) {
        const std::string wm1 = e.path("det1.pgm");
        const std::string wm2 = e.path("det2.pgm");
        const std::string k1 = e.path("det1.key");
        const std::string k2 = e.path("det2.key");
        REQUIRE(run_cli("embed " + scheme + " '" + e.cover + "' '" + e.mark + "' '" + wm1 +
                        "' '" + k1 + "'").code == 0);
        REQUIRE(run_cli("embed " + scheme + " '" + e.cover + "' '" + e.mark + "' '" + wm2 +
                        "' '" + k2 + "'").code == 0);
        CHECK(slurp(wm1) == slurp(wm2));
        CHECK(slurp(k1) == slurp(k2));
    }
}

TEST_CASE("degenerate constant extraction warns and writes mid-gray") {
    const auto& e = env();
    const std::string wm = e.path("dot_wm.pgm");
    const std::string key = e.path("dot.key");
    REQUIRE(run_cli("embed liutan '" + e.dot + "' '" + e.dot + "' '" + wm + "' '" + key +
                    "'").code == 0);
    const std::string out = e.path("dot_out.pgm");
    const RunResult r =
        run_cli("extract '" + wm + "' '" + key + "' '" + out + "' --reference '" + e.dot + "'");
    CHECK(r.code == 0);
    CHECK(r.err.find("constant") != std::string::npos);
    CHECK(r.out.find("ncc=nan") != std::string::npos);
    CHECK(svwm::load_pgm(out).pixels == std::vector<std::uint8_t>{128});
}
