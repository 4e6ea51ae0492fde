// svwm: embed, extract, and attack SVD-domain image watermarks.
//
// Exit codes: 0 success, 1 usage, 2 I/O or image parse failure,
// 3 precondition violation, 4 numerical failure, 5 key-file failure.
// Standard output carries only key=value lines; diagnostics go to stderr.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "svwm/distortion.hpp"
#include "svwm/errors.hpp"
#include "svwm/image.hpp"
#include "svwm/key_file.hpp"
#include "svwm/liu_tan.hpp"
#include "svwm/matrix.hpp"
#include "svwm/metrics.hpp"
#include "svwm/principal_components.hpp"

namespace {

constexpr double kDefaultAlpha = 0.05;

svwm::Matrix load_matrix(const std::string& path) {
    return svwm::image_to_matrix(svwm::load_pgm(path));
}

void print_metric(const char* name, double value) {
    std::printf("%s=%.9g\n", name, value);
}

// ncc printed as nan (with a stderr note) when the correlation is undefined.
void print_ncc(const svwm::Matrix& a, const svwm::Matrix& b) {
    try {
        print_metric("ncc", svwm::ncc(a, b));
    } catch (const svwm::ZeroVarianceError& e) {
        std::fprintf(stderr, "warning: %s\n", e.what());
        std::printf("ncc=nan\n");
    }
}

struct EmbedArgs {
    std::string scheme;
    std::string cover_path;
    std::string mark_path;
    std::string out_image_path;
    std::string out_key_path;
    double alpha = kDefaultAlpha;
};

int run_embed(const EmbedArgs& args) {
    const svwm::Matrix cover = load_matrix(args.cover_path);
    const svwm::Matrix mark = load_matrix(args.mark_path);
    const auto finish = [&](svwm::Matrix watermarked, svwm::ParsedKeys keys) {
        svwm::save_pgm(args.out_image_path, svwm::matrix_to_image(watermarked));
        svwm::save_keys(args.out_key_path, keys);
        print_metric("psnr_db", svwm::psnr(cover, watermarked));
        return 0;
    };
    if (args.scheme == "liutan") {
        svwm::LiuTanEmbedResult result = svwm::lt_embed(cover, mark, args.alpha);
        return finish(std::move(result.watermarked), svwm::ParsedKeys(std::move(result.keys)));
    }
    svwm::PcEmbedResult result = svwm::pc_embed(cover, mark, args.alpha);
    return finish(std::move(result.watermarked), svwm::ParsedKeys(std::move(result.keys)));
}

struct ExtractArgs {
    std::string suspect_path;
    std::string key_path;
    std::string out_mark_path;
    std::optional<std::string> reference_path;
};

svwm::Matrix extract_with(const svwm::Matrix& suspect, const svwm::LiuTanKeys& keys) {
    return svwm::lt_extract(suspect, keys);
}

svwm::Matrix extract_with(const svwm::Matrix& suspect, const svwm::PcKeys& keys) {
    return svwm::pc_extract(suspect, keys);
}

int run_extract(const ExtractArgs& args) {
    const svwm::Matrix suspect = load_matrix(args.suspect_path);
    const svwm::ParsedKeys keys = svwm::load_keys(args.key_path);
    const svwm::Matrix extracted = std::visit(
        [&](const auto& k) { return extract_with(suspect, k); }, keys);
    bool degenerate = false;
    svwm::save_pgm(args.out_mark_path, svwm::normalize_for_display(extracted, &degenerate));
    if (degenerate) {
        std::fprintf(stderr, "warning: extracted matrix is constant; wrote mid-gray\n");
    }
    if (args.reference_path) {
        print_ncc(load_matrix(*args.reference_path), extracted);
    } else {
        std::printf("ncc_self_check=skipped\n");
    }
    return 0;
}

struct ForgeArgs {
    std::string cover_path;
    std::string reference_path;
    std::string out_key_path;
    double alpha = kDefaultAlpha;
};

int run_forge(const ForgeArgs& args) {
    const svwm::Matrix cover = load_matrix(args.cover_path);
    const svwm::Matrix reference = load_matrix(args.reference_path);
    svwm::LiuTanKeygenResult gen = svwm::lt_keygen(cover, reference, args.alpha);
    svwm::save_keys(args.out_key_path, svwm::ParsedKeys(std::move(gen.keys)));
    return 0;
}

struct SearchArgs {
    std::string suspect_path;
    std::string key_path;
    std::string reference_path;
    std::optional<std::string> out_path;
};

int run_search(const SearchArgs& args) {
    const svwm::Matrix suspect = load_matrix(args.suspect_path);
    const svwm::ParsedKeys keys = svwm::load_keys(args.key_path);
    const svwm::PcKeys* pc = std::get_if<svwm::PcKeys>(&keys);
    if (pc == nullptr) {
        throw svwm::KeyFileError("search requires pc keys");
    }
    const svwm::Matrix reference = load_matrix(args.reference_path);
    const svwm::Matrix found = svwm::pc_reference_search(suspect, *pc, reference);
    if (svwm::frobenius_norm(found) <= 1e-8 * svwm::frobenius_norm(reference)) {
        std::fprintf(stderr,
                     "warning: recovered principal components are near zero; "
                     "the suspect carries no embedding\n");
    }
    print_ncc(reference, found);
    if (args.out_path) {
        svwm::save_pgm(*args.out_path, svwm::normalize_for_display(found));
    }
    return 0;
}

struct DistortArgs {
    std::string kind;
    std::string in_path;
    std::string out_path;
    std::optional<double> sigma;
    std::uint64_t seed = 0;
    std::optional<std::size_t> top;
    std::optional<std::size_t> left;
    std::optional<std::size_t> height;
    std::optional<std::size_t> width;
    double fill = 0.0;
};

int run_distort(const DistortArgs& args) {
    const svwm::Matrix in = load_matrix(args.in_path);
    svwm::Matrix out(1, 1);
    if (args.kind == "gaussian") {
        if (!args.sigma) {
            throw svwm::PreconditionError("distort gaussian requires --sigma");
        }
        out = svwm::distort_gaussian(in, *args.sigma, args.seed);
    } else if (args.kind == "crop") {
        if (!args.top || !args.left || !args.height || !args.width) {
            throw svwm::PreconditionError(
                "distort crop requires --top, --left, --height, and --width");
        }
        out = svwm::distort_crop(in, *args.top, *args.left, *args.height, *args.width,
                                 args.fill);
    } else {
        out = svwm::distort_quantize(in);
    }
    svwm::save_pgm(args.out_path, svwm::matrix_to_image(out));
    return 0;
}

int run_metrics(const std::string& a_path, const std::string& b_path) {
    const svwm::Matrix a = load_matrix(a_path);
    const svwm::Matrix b = load_matrix(b_path);
    print_ncc(a, b);
    print_metric("psnr_db", svwm::psnr(a, b));
    print_metric("mse", svwm::mse(a, b));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SVD-domain image watermarking: the Liu-Tan baseline scheme, "
                 "its false-positive forgery, and the principal-components "
                 "scheme that resists it"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    CLI::App* embed = app.add_subcommand("embed", "Embed a watermark and write detector keys");
    embed->add_option("scheme", embed_args.scheme, "Scheme: liutan or pc")
        ->required()
        ->check(CLI::IsMember({"liutan", "pc"}));
    embed->add_option("cover", embed_args.cover_path, "Cover image (PGM)")->required();
    embed->add_option("mark", embed_args.mark_path, "Watermark image (PGM)")->required();
    embed->add_option("out_image", embed_args.out_image_path, "Watermarked PGM to write")
        ->required();
    embed->add_option("out_key", embed_args.out_key_path, "Key file to write")->required();
    embed->add_option("--alpha", embed_args.alpha, "Embedding strength (default 0.05)");

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand("extract", "Extract the watermark using a key file");
    extract->add_option("suspect", extract_args.suspect_path, "Suspect image (PGM)")->required();
    extract->add_option("key", extract_args.key_path, "Key file")->required();
    extract->add_option("out_mark", extract_args.out_mark_path,
                        "Normalized extracted mark PGM to write")
        ->required();
    std::string extract_reference;
    CLI::Option* extract_ref_opt =
        extract->add_option("--reference", extract_reference,
                            "Reference image to correlate against (prints ncc=...)");

    ForgeArgs forge_args;
    CLI::App* forge = app.add_subcommand(
        "forge", "Forge liu-tan detector keys for a reference that was never embedded");
    forge->add_option("cover", forge_args.cover_path, "Cover image (PGM)")->required();
    forge->add_option("reference", forge_args.reference_path, "Reference image (PGM)")
        ->required();
    forge->add_option("out_key", forge_args.out_key_path, "Key file to write")->required();
    forge->add_option("--alpha", forge_args.alpha, "Claimed embedding strength (default 0.05)");

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand(
        "search", "Search a pc-watermarked image for an arbitrary reference mark");
    search->add_option("suspect", search_args.suspect_path, "Suspect image (PGM)")->required();
    search->add_option("key", search_args.key_path, "Key file (pc scheme)")->required();
    search->add_option("reference", search_args.reference_path, "Reference image (PGM)")
        ->required();
    std::string search_out;
    CLI::Option* search_out_opt =
        search->add_option("--out", search_out, "Write the normalized search result PGM here");

    DistortArgs distort_args;
    CLI::App* distort = app.add_subcommand("distort", "Apply a distortion to an image");
    distort->add_option("kind", distort_args.kind, "gaussian, crop, or quantize")
        ->required()
        ->check(CLI::IsMember({"gaussian", "crop", "quantize"}));
    distort->add_option("in", distort_args.in_path, "Input image (PGM)")->required();
    distort->add_option("out", distort_args.out_path, "Output image (PGM)")->required();
    double distort_sigma = 0.0;
    CLI::Option* sigma_opt =
        distort->add_option("--sigma", distort_sigma, "Gaussian noise standard deviation");
    distort->add_option("--seed", distort_args.seed, "Noise seed (default 0)");
    std::size_t crop_top = 0;
    std::size_t crop_left = 0;
    std::size_t crop_height = 0;
    std::size_t crop_width = 0;
    CLI::Option* top_opt = distort->add_option("--top", crop_top, "Crop rectangle top row");
    CLI::Option* left_opt = distort->add_option("--left", crop_left, "Crop rectangle left column");
    CLI::Option* height_opt = distort->add_option("--height", crop_height, "Crop rectangle height");
    CLI::Option* width_opt = distort->add_option("--width", crop_width, "Crop rectangle width");
    distort->add_option("--fill", distort_args.fill, "Crop fill value (default 0)");

    std::string metrics_a;
    std::string metrics_b;
    CLI::App* metrics = app.add_subcommand("metrics", "Print ncc/psnr/mse between two images");
    metrics->add_option("a", metrics_a, "First image (PGM)")->required();
    metrics->add_option("b", metrics_b, "Second image (PGM)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*embed) {
            return run_embed(embed_args);
        }
        if (*extract) {
            if (*extract_ref_opt) {
                extract_args.reference_path = extract_reference;
            }
            return run_extract(extract_args);
        }
        if (*forge) {
            return run_forge(forge_args);
        }
        if (*search) {
            if (*search_out_opt) {
                search_args.out_path = search_out;
            }
            return run_search(search_args);
        }
        if (*distort) {
            if (*sigma_opt) {
                distort_args.sigma = distort_sigma;
            }
            if (*top_opt) {
                distort_args.top = crop_top;
            }
            if (*left_opt) {
                distort_args.left = crop_left;
            }
            if (*height_opt) {
                distort_args.height = crop_height;
            }
            if (*width_opt) {
                distort_args.width = crop_width;
            }
            return run_distort(distort_args);
        }
        return run_metrics(metrics_a, metrics_b);
    } catch (const svwm::KeyFileError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const svwm::ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const svwm::DimensionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const svwm::PreconditionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const svwm::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const svwm::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
