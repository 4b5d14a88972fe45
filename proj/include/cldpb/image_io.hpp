#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cldpb/image.hpp"

namespace cldpb {

enum class ImageErrorKind {
    missing_file,
    unsupported_format,
    corrupt_data,
    io_failure,
};

class ImageError : public std::runtime_error {
public:
    ImageError(ImageErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ImageErrorKind kind() const { return kind_; }

private:
    ImageErrorKind kind_;
};

enum class ImageFormat { png, ppm };

// Format implied by the file extension (.png, .ppm); throws
// unsupported_format for anything else.
ImageFormat format_from_extension(const std::filesystem::path& path);

// Decodes PNG or binary PPM (P6, maxval 255). The format is detected from
// the file's signature, not its name. Alpha is composited over white.
RgbImage load_image(const std::filesystem::path& path);

// Writes losslessly in the format named by the extension.
void save_image(const RgbImage& img, const std::filesystem::path& path);

}  // namespace cldpb
