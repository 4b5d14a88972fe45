#include "cldpb/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cldpb/cld.hpp"
#include "cldpb/image_io.hpp"

namespace cldpb::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRngKey = "rng";

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw UsageError(key + ": not a number: '" + text + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
    Int v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw UsageError(key + ": not an integer: '" + text + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

RenderMode parse_mode(const std::string& text) {
    if (text == "cpb") return RenderMode::cpb;
    if (text == "cldpb") return RenderMode::cldpb;
    throw UsageError("mode: expected cpb or cldpb, got '" + text + "'");
}

FillMode parse_fill(const std::string& text) {
    if (text == "displaced") return FillMode::displaced;
    if (text == "nondisplaced") return FillMode::non_displaced;
    throw UsageError("fill: expected displaced or nondisplaced, got '" + text + "'");
}

DefaultColor parse_default_color(const std::string& text) {
    if (text == "white") return DefaultColor::white();
    if (text == "source") return DefaultColor::source();
    if (text.rfind("blend:", 0) == 0) {
        const double w = parse_double("default-color", text.substr(6));
        if (w < 0.0 || w > 1.0) throw UsageError("default-color: blend weight must be in [0, 1]");
        return DefaultColor::blend(w);
    }
    throw UsageError("default-color: expected white, source or blend:W, got '" + text + "'");
}

std::string mode_name(RenderMode m) {
    return m == RenderMode::cpb ? "cpb" : "cldpb";
}

std::string fill_name(FillMode f) {
    return f == FillMode::displaced ? "displaced" : "nondisplaced";
}

std::string default_color_name(const DefaultColor& d) {
    switch (d.kind) {
        case DefaultColor::Kind::white:
            return "white";
        case DefaultColor::Kind::source:
            return "source";
        case DefaultColor::Kind::blend:
            return "blend:" + format_double(d.weight);
    }
    return "white";
}

Position parse_pixel(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("cld-dump: expected X,Y");
    return {parse_int<int>("cld-dump", trim(text.substr(0, comma))), parse_int<int>("cld-dump", trim(text.substr(comma + 1)))};
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_file(const fs::path& a, const fs::path& b) {
    std::error_code ec;
    if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
    return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

void write_gray_dump(const GrayField& gray, double m0, const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ImageError(ImageErrorKind::io_failure, "cannot write gray dump: " + path.string());
    out << "width=" << gray.width() << "\nheight=" << gray.height() << "\nm0=" << format_double(m0) << '\n';
    for (int y = 0; y < gray.height(); ++y) {
        for (int x = 0; x < gray.width(); ++x) {
            if (x) out << ' ';
            out << format_double(gray.at(x, y));
        }
        out << '\n';
    }
    if (!out) throw ImageError(ImageErrorKind::io_failure, "gray dump write failed: " + path.string());
}

void print_cld(const CldDiagram& cld, double m0, std::ostream& out) {
    out << "cld x=" << cld.center.x << " y=" << cld.center.y << " tau=" << format_double(cld.tau)
        << " m0=" << format_double(m0) << '\n';
    const auto& dirs = directions();
    for (int i = 0; i < kDirectionCount; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out << i << ' ' << format_double(dirs[k].angle) << ' ' << cld.lengths[k] << ' '
            << (cld.defined[k] ? "defined" : "undefined") << '\n';
    }
}

}  // namespace

Settings parse_settings(const std::string& text) {
    Settings settings;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        settings[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return settings;
}

RenderConfig config_from_settings(const Settings& settings) {
    RenderConfig cfg;
    std::optional<int> spacing_min;
    std::optional<int> spacing_max;
    int steps = cfg.grid.step_count;
    std::uint64_t seed = cfg.grid.seed;
    std::optional<int> delta;

    for (const auto& [key, value] : settings) {
        if (key == "mode") {
            cfg.mode = parse_mode(value);
        } else if (key == "tau") {
            cfg.tau = parse_double(key, value);
        } else if (key == "size") {
            cfg.size = parse_double(key, value);
        } else if (key == "radius") {
            cfg.radius = parse_double(key, value);
        } else if (key == "steps") {
            steps = parse_int<int>(key, value);
        } else if (key == "spacing-min") {
            spacing_min = parse_int<int>(key, value);
        } else if (key == "spacing-max") {
            spacing_max = parse_int<int>(key, value);
        } else if (key == "delta") {
            if (value == "auto") {
                delta.reset();
            } else {
                delta = parse_int<int>(key, value);
            }
        } else if (key == "fill") {
            cfg.fill_mode = parse_fill(value);
        } else if (key == "default-color") {
            cfg.default_color = parse_default_color(value);
        } else if (key == "d0") {
            cfg.d0 = parse_double(key, value);
        } else if (key == "seed") {
            seed = parse_int<std::uint64_t>(key, value);
        } else if (key == kRngKey) {
            if (value != Rng::kAlgorithm) {
                throw UsageError("rng: this build uses '" + std::string(Rng::kAlgorithm) + "', not '" + value + "'");
            }
        } else {
            throw UsageError("unknown setting '" + key + "'");
        }
    }

    const double stroke_size = cfg.mode == RenderMode::cpb ? cfg.radius : cfg.size;
    cfg.grid = GridSpec::for_stroke_size(stroke_size, steps, seed);
    if (spacing_min) cfg.grid.spacing_min = *spacing_min;
    if (spacing_max) cfg.grid.spacing_max = *spacing_max;
    if (spacing_min && !spacing_max) cfg.grid.spacing_max = std::max(cfg.grid.spacing_max, *spacing_min);
    if (spacing_max && !spacing_min) cfg.grid.spacing_min = std::min(cfg.grid.spacing_min, *spacing_max);
    cfg.grid.delta = delta;

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

Settings manifest_entries(const RenderConfig& cfg) {
    Settings m;
    m["mode"] = mode_name(cfg.mode);
    m["tau"] = format_double(cfg.tau);
    m["size"] = format_double(cfg.size);
    m["radius"] = format_double(cfg.radius);
    m["steps"] = std::to_string(cfg.grid.step_count);
    m["spacing-min"] = std::to_string(cfg.grid.spacing_min);
    m["spacing-max"] = std::to_string(cfg.grid.spacing_max);
    m["delta"] = cfg.grid.delta ? std::to_string(*cfg.grid.delta) : "auto";
    m["fill"] = fill_name(cfg.fill_mode);
    m["default-color"] = default_color_name(cfg.default_color);
    m["d0"] = format_double(cfg.d0);
    m["seed"] = std::to_string(cfg.grid.seed);
    m[kRngKey] = std::string(Rng::kAlgorithm);
    return m;
}

std::string format_manifest(const RenderConfig& cfg) {
    std::string text;
    for (const auto& [key, value] : manifest_entries(cfg)) text += key + "=" + value + "\n";
    return text;
}

fs::path manifest_path_for(const fs::path& output) {
    fs::path p = output;
    p += ".manifest";
    return p;
}

CliInvocation parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Painterly rendering with coherence-length-shaped brushstrokes"};
    app.name(argv.empty() ? "cldpb" : fs::path(argv.front()).filename().string());
    app.require_subcommand(1, 1);
    app.footer("Exit codes: 0 success, 1 usage, 2 input I/O, 3 decode, 4 output I/O");
    CLI::App* render = app.add_subcommand("render", "Render INPUT into OUTPUT (PNG or binary PPM by extension)");

    std::string input, output;
    render->add_option("input", input, "Input image")->required();
    render->add_option("output", output, "Output image")->required();

    std::string config_path;
    render->add_option("--config", config_path, "key=value settings file (e.g. a previous manifest)");

    struct Flag {
        const char* key;
        const char* help;
        std::string value;
        CLI::Option* option = nullptr;
    };
    std::vector<Flag> flags{
        {"mode", "cpb or cldpb (default cldpb)", {}},
        {"tau", "coherence threshold, >= 0 (default 0.2)", {}},
        {"size", "mean stroke radius in px, cldpb only (default 2)", {}},
        {"radius", "disc radius in px, cpb only (default 2)", {}},
        {"steps", "number of grid passes (default 3)", {}},
        {"spacing-min", "smallest grid spacing (default max(2, floor(size)))", {}},
        {"spacing-max", "largest grid spacing (default 4 * spacing-min default)", {}},
        {"delta", "displacement bound in px, or auto = ceil(spacing/2) (default auto)", {}},
        {"fill", "displaced or nondisplaced (default nondisplaced)", {}},
        {"default-color", "white, source or blend:W for unpainted pixels (default white)", {}},
        {"d0", "minimum tracing distance in px (default 10)", {}},
        {"seed", "64-bit RNG seed (default 0)", {}},
    };
    for (Flag& f : flags) {
        f.option = render->add_option(std::string("--") + f.key, f.value, f.help);
    }

    bool manifest = false;
    render->add_flag("--manifest", manifest, "Also write OUTPUT.manifest with every effective setting");
    std::string gray_dump;
    render->add_option("--gray-dump", gray_dump, "Write the grayscale field and its mean to this file");
    std::string cld_dump;
    render->add_option("--cld-dump", cld_dump, "Print the 32 coherence lengths at pixel X,Y");
    int threads = 1;
    render->add_option("--threads", threads, "Worker threads, 0 = all cores; output is unaffected (default 1)");
    int verbosity = 0;
    render->add_flag("-v,--verbose", verbosity, "Progress on stderr; repeat for more");

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) throw HelpRequested(app.help("", CLI::AppFormatMode::All));
        throw UsageError(e.what());
    }

    Settings settings;
    if (!config_path.empty()) settings = parse_settings(read_text_file(config_path));
    for (const Flag& f : flags) {
        if (f.option->count() > 0) settings[f.key] = f.value;
    }

    CliInvocation inv;
    inv.config = config_from_settings(settings);

    const auto given = [&](const char* key) {
        for (const Flag& f : flags) {
            if (key == std::string_view(f.key)) return f.option->count() > 0;
        }
        return false;
    };
    if (inv.config.mode == RenderMode::cldpb && given("radius")) {
        throw UsageError("--radius applies to --mode cpb only");
    }
    if (inv.config.mode == RenderMode::cpb && (given("tau") || given("size") || given("d0"))) {
        throw UsageError("--tau, --size and --d0 apply to --mode cldpb only");
    }
    if (threads < 0) throw UsageError("--threads must be >= 0");
    inv.config.threads = threads;

    inv.input_path = input;
    inv.output_path = output;
    if (same_file(inv.input_path, inv.output_path)) throw UsageError("input and output must differ");
    try {
        format_from_extension(inv.output_path);
    } catch (const ImageError& e) {
        throw UsageError(std::string(e.what()) + " (use .png or .ppm)");
    }

    inv.write_manifest = manifest;
    if (!gray_dump.empty()) inv.gray_dump = gray_dump;
    if (!cld_dump.empty()) inv.cld_dump = parse_pixel(cld_dump);
    inv.verbosity = verbosity;
    return inv;
}

int run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    RgbImage img(1, 1);
    try {
        img = load_image(inv.input_path);
    } catch (const ImageError& e) {
        err << "error: " << e.what() << '\n';
        const bool io = e.kind() == ImageErrorKind::missing_file || e.kind() == ImageErrorKind::io_failure;
        return io ? kInputIo : kDecode;
    }
    if (inv.verbosity > 0) {
        err << "loaded " << inv.input_path.string() << " (" << img.width() << "x" << img.height() << ")\n";
    }

    if (inv.cld_dump && !img.contains(*inv.cld_dump)) {
        err << "error: --cld-dump pixel lies outside the " << img.width() << "x" << img.height() << " image\n";
        return kUsage;
    }
    if (inv.gray_dump || inv.cld_dump) {
        const GrayField gray = to_gray(img);
        const double m0 = global_mean(gray);
        if (inv.gray_dump) {
            try {
                write_gray_dump(gray, m0, *inv.gray_dump);
            } catch (const ImageError& e) {
                err << "error: " << e.what() << '\n';
                return kOutputIo;
            }
        }
        if (inv.cld_dump) {
            print_cld(cld_at(gray, m0, *inv.cld_dump, inv.config.tau, default_max_length(img.width(), img.height())),
                      m0, out);
        }
    }

    const auto started = std::chrono::steady_clock::now();
    const RgbImage painted = render(img, inv.config);
    if (inv.verbosity > 0) {
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
        err << "rendered in " << ms << " ms\n";
    }

    try {
        save_image(painted, inv.output_path);
    } catch (const ImageError& e) {
        err << "error: " << e.what() << '\n';
        return kOutputIo;
    }

    if (inv.write_manifest) {
        const fs::path path = manifest_path_for(inv.output_path);
        std::ofstream mf(path, std::ios::binary | std::ios::trunc);
        mf << format_manifest(inv.config);
        mf.close();
        if (!mf) {
            err << "error: cannot write manifest " << path.string() << '\n';
            return kOutputIo;
        }
    }
    if (inv.verbosity > 1) err << format_manifest(inv.config);
    return kSuccess;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CliInvocation inv;
    try {
        inv = parse_args(argv);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kSuccess;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for the list of flags\n";
        return kUsage;
    }
    return run(inv, out, err);
}

}  // namespace cldpb::cli
