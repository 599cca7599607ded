#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hv2q {

/// Entry point shared by the binary and the tests. Exit codes:
///   0  all requested checks passed
///   1  a verification check failed
///   2  usage or input error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hv2q
