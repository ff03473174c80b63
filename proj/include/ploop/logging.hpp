#pragma once

namespace ploop {

/// Configures the diagnostic logger (stderr) from PLOOP_LOG_LEVEL:
/// error, info or debug. Unset or unknown values mean error.
void init_logging();

}  // namespace ploop
