#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cldpb/render.hpp"

namespace cldpb::cli {

// Stable process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kInputIo = 2,
    kDecode = 3,
    kOutputIo = 4,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliInvocation {
    std::filesystem::path input_path;
    std::filesystem::path output_path;
    RenderConfig config;
    bool write_manifest = false;
    std::optional<std::filesystem::path> gray_dump;
    std::optional<Position> cld_dump;
    int verbosity = 0;
};

using Settings = std::map<std::string, std::string>;

// argv[0] is the program name; argv[1] must be the `render` subcommand.
// Precedence: built-in defaults < --config file < flags.
CliInvocation parse_args(const std::vector<std::string>& argv);

// key=value lines; blank lines and lines starting with '#' are skipped.
Settings parse_settings(const std::string& text);

// Builds a config from defaults overlaid with `settings`. Spacing bounds
// not given explicitly follow the stroke size (cldpb) or radius (cpb).
RenderConfig config_from_settings(const Settings& settings);

// Every effective parameter plus the RNG identifier, as sorted key=value
// lines. Feeding it back through --config reproduces the render.
Settings manifest_entries(const RenderConfig& cfg);
std::string format_manifest(const RenderConfig& cfg);
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

int run(const CliInvocation& inv, std::ostream& out, std::ostream& err);

// parse_args + run with usage/help handling; what main() calls.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cldpb::cli
