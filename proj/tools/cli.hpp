#pragma once

#include <iosfwd>

namespace rbokit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kBadArguments = 2;
inline constexpr int kVerifyFailed = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rbokit::cli
