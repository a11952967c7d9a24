#pragma once

namespace plc::cli {

// Entry point behind the `plc` tool.  Exit status: 0 on success, 2 on usage
// errors, 1 on runtime failures.
int run(int argc, const char* const* argv);

}  // namespace plc::cli
