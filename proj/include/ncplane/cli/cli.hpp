#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncplane::cli {

// args excludes the program name. Exit code 0 on verified outcomes, 1 on
// negative verdicts, 2 on errors; the JSON report goes to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace ncplane::cli
