#pragma once

namespace softclique::cli {

/// Runs one subcommand. Returns 0 on success, 1 on domain errors and 2 on
/// usage errors.
int dispatch(int argc, const char* const* argv);

}  // namespace softclique::cli
