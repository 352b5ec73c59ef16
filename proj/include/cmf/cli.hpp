#ifndef CMF_CLI_HPP_
#define CMF_CLI_HPP_

#include <iosfwd>

namespace cmf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitVerify = 3;

// The maxflow command line: solve, gen, bench and verify.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmf

#endif  // CMF_CLI_HPP_
