/*
 * Copyright 2026 The pedact authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pedact/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "pedact/common.hpp"

namespace pedact {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF) throw DataError("pnm: unexpected end of header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

GrayPatch load_pnm(const std::filesystem::path& path, bool color) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image: " + path.string());
    char magic[2];
    in.read(magic, 2);
    int w = read_pnm_token(in);
    int h = read_pnm_token(in);
    int maxval = read_pnm_token(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
        throw DataError("pnm: unsupported header in " + path.string());
    }
    std::size_t channels = color ? 3 : 1;
    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * channels);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw DataError("pnm: truncated pixel data in " + path.string());
    }

    GrayPatch img(w, h);
    const double scale = 1.0 / maxval;
    for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
        if (color) {
            img.pixels[i] = scale * (kLumaR * raw[3 * i] + kLumaG * raw[3 * i + 1] +
                                     kLumaB * raw[3 * i + 2]);
        } else {
            img.pixels[i] = scale * raw[i];
        }
    }
    return img;
}

GrayPatch load_png(const std::filesystem::path& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw DataError("cannot open image: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw DataError("png: allocation failure");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw DataError("png: malformed file " + path.string());
    }

    png_init_io(png, fp);
    png_read_info(png, info);
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
        png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<unsigned char> data(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);

    GrayPatch img(static_cast<int>(w), static_cast<int>(h));
    for (png_uint_32 y = 0; y < h; ++y) {
        const unsigned char* row = data.data() + y * rowbytes;
        for (png_uint_32 x = 0; x < w; ++x) {
            img.at(static_cast<int>(x), static_cast<int>(y)) =
                (kLumaR * row[3 * x] + kLumaG * row[3 * x + 1] + kLumaB * row[3 * x + 2]) / 255.0;
        }
    }
    return img;
}

}  // namespace

GrayPatch load_image(const std::filesystem::path& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw DataError("cannot open image: " + path.string());
    unsigned char sig[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(sig), 2);
    probe.close();

    if (sig[0] == 0x89 && sig[1] == 'P') return load_png(path);
    if (sig[0] == 'P' && sig[1] == '6') return load_pnm(path, true);
    if (sig[0] == 'P' && sig[1] == '5') return load_pnm(path, false);
    throw DataError("unsupported image format: " + path.string());
}

void write_pgm(const std::filesystem::path& path, const GrayPatch& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write image: " + path.string());
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.pixels.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double v = std::clamp(image.pixels[i], 0.0, 1.0);
        raw[i] = static_cast<unsigned char>(v * 255.0 + 0.5);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw DataError("short write: " + path.string());
}

}  // namespace pedact
