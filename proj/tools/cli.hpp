#pragma once

#include <iosfwd>

namespace gramlocus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitFailed = 2;

/// Entry point of the gramlocus executable. Reads tensors from `in` when no
/// --input is given.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gramlocus::cli
