#pragma once

#include <ostream>

namespace tangle::app {

/// Command-line entry point. Exit codes: 0 ok, 2 validation failure,
/// 3 numerical-tolerance breach, 4 I/O failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace tangle::app
