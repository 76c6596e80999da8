#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pycorpus::cli {

/// Runs the `pycorpus` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pycorpus::cli
