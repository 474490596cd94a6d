#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsvar::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2 };

/// args excludes the program name. The report goes to `out` unless --out is
/// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tsvar::cli
