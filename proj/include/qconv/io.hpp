#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qconv/error.hpp"
#include "qconv/field.hpp"
#include "qconv/quaternion.hpp"

namespace qconv {

// QF01 layout: "QF01", n1 (u32 LE), n2 (u32 LE), then n1*n2 quaternions as
// four little-endian f64 each in (w, x, y, z) order, row-major.
inline constexpr std::array<char, 4> field_magic{'Q', 'F', '0', '1'};
inline constexpr std::size_t field_header_bytes = 12;

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int b = 0; b < 4; ++b)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v)
{
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b)
        out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

inline std::uint64_t get_le(const std::uint8_t* p, int bytes)
{
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b)
        v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    return v;
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io_error, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw error(errc::io_error, "read failed for " + path.string());
    return bytes;
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error(errc::io_error, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw error(errc::io_error, "write failed for " + path.string());
}

} // namespace detail

inline std::vector<std::uint8_t> encode_field(const QField& f)
{
    std::vector<std::uint8_t> out;
    out.reserve(field_header_bytes + 32 * f.size());
    out.insert(out.end(), field_magic.begin(), field_magic.end());
    detail::put_u32(out, static_cast<std::uint32_t>(f.n1()));
    detail::put_u32(out, static_cast<std::uint32_t>(f.n2()));
    for (const auto& q : f.data()) {
        detail::put_f64(out, q.w);
        detail::put_f64(out, q.x);
        detail::put_f64(out, q.y);
        detail::put_f64(out, q.z);
    }
    return out;
}

inline QField decode_field(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4 || !std::equal(field_magic.begin(), field_magic.end(), bytes.begin()))
        throw error(errc::bad_magic, "expected QF01 header");
    if (bytes.size() < field_header_bytes)
        throw error(errc::truncated_payload, "header shorter than 12 bytes");
    const auto n1 = static_cast<std::size_t>(detail::get_le(bytes.data() + 4, 4));
    const auto n2 = static_cast<std::size_t>(detail::get_le(bytes.data() + 8, 4));
    if (n1 == 0 || n2 == 0)
        throw error(errc::truncated_payload, "grid dimensions must be positive");
    const std::size_t payload = 32 * n1 * n2;
    if (bytes.size() - field_header_bytes < payload)
        throw error(errc::truncated_payload, "expected " + std::to_string(payload) + " payload bytes, found " +
                                                 std::to_string(bytes.size() - field_header_bytes));
    QField f(n1, n2);
    const std::uint8_t* p = bytes.data() + field_header_bytes;
    for (auto& q : f.data()) {
        q.w = std::bit_cast<double>(detail::get_le(p, 8));
        q.x = std::bit_cast<double>(detail::get_le(p + 8, 8));
        q.y = std::bit_cast<double>(detail::get_le(p + 16, 8));
        q.z = std::bit_cast<double>(detail::get_le(p + 24, 8));
        p += 32;
    }
    return f;
}

inline QField read_field(const std::filesystem::path& path)
{
    const auto bytes = detail::read_bytes(path);
    return decode_field(bytes);
}

inline void write_field(const std::filesystem::path& path, const QField& f)
{
    detail::write_bytes(path, encode_field(f));
}

// PPM (P6, maxval 255). Pixel (r, g, b) <-> pure quaternion (r i + g j + b k) / 255.
// Image rows run along axis 1, columns along axis 2.

namespace detail {

class ppm_header_reader {
public:
    explicit ppm_header_reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::string token()
    {
        skip_space_and_comments();
        std::string t;
        while (pos_ < bytes_.size() && !is_space(bytes_[pos_]))
            t.push_back(static_cast<char>(bytes_[pos_++]));
        return t;
    }

    std::size_t number()
    {
        const std::string t = token();
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
            throw error(errc::unsupported_format, "malformed PPM header field '" + t + "'");
        return v;
    }

    /// Consumes the single whitespace byte that ends the header.
    std::size_t pixel_offset()
    {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
            throw error(errc::unsupported_format, "PPM header not terminated by whitespace");
        return pos_ + 1;
    }

private:
    static bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline QField decode_ppm(std::span<const std::uint8_t> bytes)
{
    detail::ppm_header_reader header(bytes);
    const std::string magic = header.token();
    if (magic != "P6")
        throw error(errc::unsupported_format, "only binary P6 images are supported, got '" + magic + "'");
    const std::size_t width = header.number();
    const std::size_t height = header.number();
    const std::size_t maxval = header.number();
    if (maxval != 255)
        throw error(errc::unsupported_format, "maxval must be 255, got " + std::to_string(maxval));
    if (width == 0 || height == 0)
        throw error(errc::unsupported_format, "empty image");
    const std::size_t offset = header.pixel_offset();
    if (bytes.size() < offset || bytes.size() - offset < 3 * width * height)
        throw error(errc::io_error, "truncated pixel data");
    QField f(height, width);
    const std::uint8_t* p = bytes.data() + offset;
    for (auto& q : f.data()) {
        q = {0.0, p[0] / 255.0, p[1] / 255.0, p[2] / 255.0};
        p += 3;
    }
    return f;
}

inline QField read_ppm(const std::filesystem::path& path)
{
    const auto bytes = detail::read_bytes(path);
    return decode_ppm(bytes);
}

/// Round half up, then clamp to [0, 255].
inline std::uint8_t quantize_channel(double v)
{
    const double scaled = std::floor(v * 255.0 + 0.5);
    if (!(scaled > 0.0))
        return 0;
    if (scaled >= 255.0)
        return 255;
    return static_cast<std::uint8_t>(scaled);
}

/// Drops the scalar part; warns on `diag` when its magnitude exceeds 1e-6.
inline std::vector<std::uint8_t> encode_ppm(const QField& f, std::ostream* diag = nullptr)
{
    double leak = 0.0;
    for (const auto& q : f.data())
        leak = std::max(leak, std::abs(q.w));
    if (leak > 1e-6 && diag)
        *diag << "warning: discarding scalar part of magnitude up to " << leak << " when writing PPM\n";

    const std::string header = "P6\n" + std::to_string(f.n2()) + " " + std::to_string(f.n1()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + 3 * f.size());
    for (const auto& q : f.data()) {
        out.push_back(quantize_channel(q.x));
        out.push_back(quantize_channel(q.y));
        out.push_back(quantize_channel(q.z));
    }
    return out;
}

inline void write_ppm(const std::filesystem::path& path, const QField& f, std::ostream* diag = nullptr)
{
    detail::write_bytes(path, encode_ppm(f, diag));
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline Root parse_vector(std::string_view text)
{
    std::array<double, 3> v{};
    std::size_t count = 0;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view part = trim(text.substr(0, comma));
        if (count == 3)
            throw error(errc::parse_error, "root vector has more than three components");
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v[count]);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw error(errc::parse_error, "bad number '" + std::string(part) + "'");
        ++count;
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    if (count != 3)
        throw error(errc::parse_error, "root vector needs three components");
    return make_root(v[0], v[1], v[2]);
}

} // namespace detail

/// Accepts "equal-i", "perp-ij", "gray-line", "b,c,d" (nu = mu) or "b,c,d;b,c,d".
inline RootPair parse_roots(std::string_view text)
{
    text = detail::trim(text);
    if (text == "equal-i")
        return RootPair(make_root(1, 0, 0), make_root(1, 0, 0));
    if (text == "perp-ij")
        return RootPair(make_root(1, 0, 0), make_root(0, 1, 0));
    if (text == "gray-line") {
        const Root gray = make_root(1, 1, 1);
        return RootPair(gray, gray);
    }
    const auto semi = text.find(';');
    const Root mu = detail::parse_vector(text.substr(0, semi));
    if (semi == std::string_view::npos)
        return RootPair(mu, mu);
    return RootPair(mu, detail::parse_vector(text.substr(semi + 1)));
}

/// Reads either format, chosen by the leading bytes.
inline QField read_any(const std::filesystem::path& path)
{
    const auto bytes = detail::read_bytes(path);
    if (bytes.size() >= 2 && bytes[0] == 'P')
        return decode_ppm(bytes);
    return decode_field(bytes);
}

} // namespace qconv
