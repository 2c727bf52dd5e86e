#pragma once

#include <iosfwd>

namespace hml::cli {

/// Entry point of the hml tool; returns the process exit status.
int app_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hml::cli
