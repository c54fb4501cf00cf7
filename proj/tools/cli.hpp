#pragma once

#include <iosfwd>

namespace g2surf::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitResidual = 2;

/// Entry point of the g2surf command; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace g2surf::cli
