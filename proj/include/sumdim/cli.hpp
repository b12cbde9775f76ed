#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sumdim::cli {

// Full command driver.  args excludes the program name.  Exit codes:
// 0 success, 1 mathematical finding (an inequality check failed),
// 2 usage or configuration error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sumdim::cli
