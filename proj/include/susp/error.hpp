#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace susp {

enum class Errc {
    Empty,
    BadSymbol,
    MixedWidth,
    DuplicateRow,
    SizeOverflow,
    MissingDiagonal,
    OracleCapExceeded,
    TraceMismatch,
    CapacityOutOfRange,
    BadFormat,
};

constexpr std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::Empty: return "Empty";
    case Errc::BadSymbol: return "BadSymbol";
    case Errc::MixedWidth: return "MixedWidth";
    case Errc::DuplicateRow: return "DuplicateRow";
    case Errc::SizeOverflow: return "SizeOverflow";
    case Errc::MissingDiagonal: return "MissingDiagonal";
    case Errc::OracleCapExceeded: return "OracleCapExceeded";
    case Errc::TraceMismatch: return "TraceMismatch";
    case Errc::CapacityOutOfRange: return "CapacityOutOfRange";
    case Errc::BadFormat: return "BadFormat";
    }
    return "Unknown";
}

/// Library-wide exception. `code()` identifies the failure class so callers
/// (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace susp
