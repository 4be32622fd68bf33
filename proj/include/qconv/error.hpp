#pragma once

#include <stdexcept>
#include <string>

namespace qconv {

enum class errc {
    zero_vector,
    shape_mismatch,
    roots_not_perpendicular,
    roots_not_equal,
    bad_magic,
    truncated_payload,
    io_error,
    unsupported_format,
    parse_error,
};

inline const char* to_string(errc code) noexcept
{
    switch (code) {
    case errc::zero_vector: return "ZeroVector";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::roots_not_perpendicular: return "RootsNotPerpendicular";
    case errc::roots_not_equal: return "RootsNotEqual";
    case errc::bad_magic: return "BadMagic";
    case errc::truncated_payload: return "TruncatedPayload";
    case errc::io_error: return "IoError";
    case errc::unsupported_format: return "UnsupportedFormat";
    case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace qconv
