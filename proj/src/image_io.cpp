#include "cldpb/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace cldpb {

namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> read_all(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        throw ImageError(ImageErrorKind::missing_file, "no such file: " + path.string());
    }
    if (fs::is_directory(path, ec)) {
        throw ImageError(ImageErrorKind::io_failure, "is a directory: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ImageError(ImageErrorKind::io_failure, "cannot open for reading: " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw ImageError(ImageErrorKind::io_failure, "read failed: " + path.string());
    }
    return bytes;
}

// --- PPM (P6) ---------------------------------------------------------

class PpmHeaderReader {
public:
    explicit PpmHeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw ImageError(ImageErrorKind::corrupt_data, "malformed PPM header");
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                throw ImageError(ImageErrorKind::corrupt_data, "PPM header value out of range");
            }
            ++pos_;
        }
        return static_cast<int>(value);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw ImageError(ImageErrorKind::corrupt_data, "malformed PPM header");
        }
        return pos_ + 1;
    }

    void skip(std::size_t n) { pos_ += n; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

RgbImage decode_ppm(const std::vector<unsigned char>& bytes) {
    PpmHeaderReader header(bytes);
    header.skip(2);
    const int width = header.next_int();
    const int height = header.next_int();
    const int maxval = header.next_int();
    if (width < 1 || height < 1) {
        throw ImageError(ImageErrorKind::corrupt_data, "PPM has empty dimensions");
    }
    if (maxval != 255) {
        throw ImageError(ImageErrorKind::unsupported_format, "only PPM maxval 255 is supported");
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() < offset || (bytes.size() - offset) / 3 < count) {
        throw ImageError(ImageErrorKind::corrupt_data, "PPM raster is truncated");
    }
    std::vector<Rgb> pixels(count);
    const unsigned char* src = bytes.data() + offset;
    for (std::size_t i = 0; i < count; ++i) {
        pixels[i] = Rgb{src[3 * i], src[3 * i + 1], src[3 * i + 2]};
    }
    return RgbImage(width, height, std::move(pixels));
}

void encode_ppm(const RgbImage& img, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ImageError(ImageErrorKind::io_failure, "cannot open for writing: " + path.string());
    }
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::vector<char> raster;
    raster.reserve(img.pixel_count() * 3);
    for (const Rgb& p : img.pixels()) {
        raster.push_back(static_cast<char>(p.r));
        raster.push_back(static_cast<char>(p.g));
        raster.push_back(static_cast<char>(p.b));
    }
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    out.close();
    if (!out) {
        throw ImageError(ImageErrorKind::io_failure, "write failed: " + path.string());
    }
}

// --- PNG (libpng simplified API) --------------------------------------

constexpr std::array<unsigned char, 8> kPngSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::uint8_t over_white(std::uint8_t c, std::uint8_t a) {
    return static_cast<std::uint8_t>((int{c} * a + 255 * (255 - a) + 127) / 255);
}

RgbImage decode_png(const std::vector<unsigned char>& bytes) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        std::string msg = image.message;
        png_image_free(&image);
        throw ImageError(ImageErrorKind::corrupt_data, "PNG decode failed: " + msg);
    }
    image.format = PNG_FORMAT_RGBA;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw ImageError(ImageErrorKind::corrupt_data, "PNG decode failed: " + msg);
    }
    const int width = static_cast<int>(image.width);
    const int height = static_cast<int>(image.height);
    std::vector<Rgb> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        const png_byte* px = buffer.data() + 4 * i;
        pixels[i] = Rgb{over_white(px[0], px[3]), over_white(px[1], px[3]), over_white(px[2], px[3])};
    }
    return RgbImage(width, height, std::move(pixels));
}

void encode_png(const RgbImage& img, const fs::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    static_assert(sizeof(Rgb) == 3);
    const auto* data = reinterpret_cast<const png_byte*>(img.pixels().data());
    if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw ImageError(ImageErrorKind::io_failure, "PNG write failed for " + path.string() + ": " + msg);
    }
}

std::string lowercase_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

ImageFormat format_from_extension(const fs::path& path) {
    const std::string ext = lowercase_extension(path);
    if (ext == ".png") return ImageFormat::png;
    if (ext == ".ppm") return ImageFormat::ppm;
    throw ImageError(ImageErrorKind::unsupported_format, "unsupported image extension: " + path.string());
}

RgbImage load_image(const fs::path& path) {
    const std::vector<unsigned char> bytes = read_all(path);
    if (bytes.size() >= kPngSignature.size() && std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
        return decode_ppm(bytes);
    }
    throw ImageError(ImageErrorKind::unsupported_format, "not a PNG or binary PPM file: " + path.string());
}

void save_image(const RgbImage& img, const fs::path& path) {
    switch (format_from_extension(path)) {
        case ImageFormat::png:
            encode_png(img, path);
            break;
        case ImageFormat::ppm:
            encode_ppm(img, path);
            break;
    }
}

}  // namespace cldpb
