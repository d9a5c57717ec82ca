#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mstd::cli {

/// Parses and runs one invocation. Primary output goes to `out`, error JSON to
/// `err`. Returns the process exit status: 0 success, 1 failed computation or
/// verification, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace mstd::cli
