// ----------------------------------------------------------------------------
// Copyright 2026 The ssdr Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ----------------------------------------------------------------------------

#include "io/pfm.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>

#include "core/error.hpp"

namespace ssdr::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what, std::size_t offset) {
    throw ParseError("pfm: " + what + " at byte " + std::to_string(offset));
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> b) : bytes_(b) {}

    std::string token() {
        while (pos_ < bytes_.size() && std::isspace(bytes_[pos_])) ++pos_;
        start_ = pos_;
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) ++pos_;
        if (start == pos_) parse_fail("unexpected end of header", pos_);
        return {reinterpret_cast<const char*>(bytes_.data()) + start, pos_ - start};
    }

    // The header ends with exactly one whitespace byte after the scale token.
    void end_header() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) parse_fail("missing newline after scale", pos_);
        ++pos_;
    }

    std::size_t pos() const { return pos_; }
    std::size_t token_start() const { return start_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
    std::size_t start_ = 0;
};

template <typename T>
T parse_number(const std::string& tok, std::size_t offset, const char* what) {
    T value{};
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || end != tok.data() + tok.size()) parse_fail(std::string("bad ") + what + " '" + tok + "'", offset);
    return value;
}

}  // namespace

ImageBuffer decode_pfm(std::span<const std::uint8_t> bytes) {
    HeaderReader hr(bytes);
    const std::string magic = hr.token();
    int channels = 0;
    if (magic == "PF") channels = 3;
    else if (magic == "Pf") channels = 1;
    else parse_fail("bad magic '" + magic + "'", 0);

    std::string tok = hr.token();
    const int width = parse_number<int>(tok, hr.token_start(), "width");
    if (width <= 0) parse_fail("non-positive width", hr.token_start());
    tok = hr.token();
    const int height = parse_number<int>(tok, hr.token_start(), "height");
    if (height <= 0) parse_fail("non-positive height", hr.token_start());
    tok = hr.token();
    const double scale = parse_number<double>(tok, hr.token_start(), "scale");
    if (scale == 0.0 || !std::isfinite(scale)) parse_fail("zero or non-finite scale", hr.token_start());
    hr.end_header();

    const bool little = scale < 0.0;
    const std::size_t count = static_cast<std::size_t>(width) * height * channels;
    const std::size_t data_start = hr.pos();
    const std::size_t expected = data_start + count * 4;
    if (bytes.size() < expected) parse_fail("truncated payload, expected " + std::to_string(count * 4) + " bytes", bytes.size());
    if (bytes.size() > expected) parse_fail("trailing data after payload", expected);

    ImageBuffer img(width, height, channels);
    const std::uint8_t* p = bytes.data() + data_start;
    for (int row = 0; row < height; ++row) {
        const int y = height - 1 - row;
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < channels; ++c, p += 4) {
                std::uint32_t u = 0;
                for (int k = 0; k < 4; ++k) u |= std::uint32_t(p[little ? k : 3 - k]) << (8 * k);
                img.at(x, y, c) = static_cast<double>(std::bit_cast<float>(u));
            }
    }
    return img;
}

std::vector<std::uint8_t> encode_pfm(const ImageBuffer& img) {
    if (img.channels() != 1 && img.channels() != 3)
        throw ConfigError("pfm: only 1- or 3-channel images can be written");
    const std::string header = std::string(img.channels() == 3 ? "PF" : "Pf") + "\n" + std::to_string(img.width()) +
                               " " + std::to_string(img.height()) + "\n-1.0\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.data().size() * 4);
    for (int row = 0; row < img.height(); ++row) {
        const int y = img.height() - 1 - row;
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < img.channels(); ++c) {
                const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(img.at(x, y, c)));
                for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(u >> (8 * k)));
            }
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

ImageBuffer read_pfm(const std::filesystem::path& path) {
    try {
        return decode_pfm(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_pfm(const std::filesystem::path& path, const ImageBuffer& img) { write_file(path, encode_pfm(img)); }

}  // namespace ssdr::io
