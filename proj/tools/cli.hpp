#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace designworld {

// Entry point of the `designworld` command: run | sweep | replicate.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace designworld
