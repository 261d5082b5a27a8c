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
#include <doctest.h>

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pedact/common.hpp"
#include "pedact/image_io.hpp"

using namespace pedact;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "pedact_imgio_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("pgm round trip within quantization error") {
    Rng rng(21);
    GrayPatch img(17, 9);
    for (double& v : img.pixels) v = rng.uniform();

    fs::path path = temp_dir() / "roundtrip.pgm";
    write_pgm(path, img);
    GrayPatch back = load_image(path);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(std::abs(back.pixels[i] - img.pixels[i]) <= 0.5 / 255.0 + 1e-9);
    }
}

TEST_CASE("ppm color converts with the fixed luma weights") {
    fs::path path = temp_dir() / "colors.ppm";
    {
        std::ofstream out(path, std::ios::binary);
        out << "P6\n2 1\n255\n";
        unsigned char px[6] = {255, 0, 0, 0, 255, 0};
        out.write(reinterpret_cast<char*>(px), 6);
    }
    GrayPatch img = load_image(path);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 1);
    CHECK(img.at(0, 0) == doctest::Approx(0.299));
    CHECK(img.at(1, 0) == doctest::Approx(0.587));
}

TEST_CASE("pnm comments are skipped") {
    fs::path path = temp_dir() / "comment.pgm";
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n# a comment line\n3 2\n255\n";
        unsigned char px[6] = {0, 51, 102, 153, 204, 255};
        out.write(reinterpret_cast<char*>(px), 6);
    }
    GrayPatch img = load_image(path);
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.at(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("png loads through the same grayscale conversion") {
    fs::path path = temp_dir() / "tiny.png";
    // 3x2 RGB written with libpng directly
    const unsigned char rows[2][9] = {
        {255, 0, 0, 0, 255, 0, 0, 0, 255},
        {255, 255, 255, 0, 0, 0, 128, 128, 128},
    };
    {
        std::FILE* fp = std::fopen(path.c_str(), "wb");
        REQUIRE(fp != nullptr);
        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                                  nullptr);
        png_infop info = png_create_info_struct(png);
        REQUIRE(setjmp(png_jmpbuf(png)) == 0);
        png_init_io(png, fp);
        png_set_IHDR(png, info, 3, 2, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                     PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        for (const auto& row : rows) png_write_row(png, const_cast<png_bytep>(row));
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
    }

    GrayPatch img = load_image(path);
    REQUIRE(img.width == 3);
    REQUIRE(img.height == 2);
    CHECK(img.at(0, 0) == doctest::Approx(0.299));
    CHECK(img.at(1, 0) == doctest::Approx(0.587));
    CHECK(img.at(2, 0) == doctest::Approx(0.114));
    CHECK(img.at(0, 1) == doctest::Approx(1.0));
    CHECK(img.at(1, 1) == doctest::Approx(0.0));
    CHECK(img.at(2, 1) == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("truncated and unknown files are rejected") {
    fs::path bad = temp_dir() / "truncated.pgm";
    {
        std::ofstream out(bad, std::ios::binary);
        out << "P5\n4 4\n255\n";
        out << "xy";  // 2 of 16 bytes
    }
    CHECK_THROWS_AS(load_image(bad), DataError);

    fs::path unknown = temp_dir() / "unknown.img";
    {
        std::ofstream out(unknown, std::ios::binary);
        out << "GARBAGE";
    }
    CHECK_THROWS_AS(load_image(unknown), DataError);
    CHECK_THROWS_AS(load_image(temp_dir() / "missing.png"), DataError);
}
