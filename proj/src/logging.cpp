#include "ploop/logging.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace ploop {

void init_logging() {
    auto logger = spdlog::stderr_color_mt("ploop");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("PLOOP_LOG_LEVEL");
    const std::string_view level = env ? env : "error";
    if (level == "debug")
        spdlog::set_level(spdlog::level::debug);
    else if (level == "info")
        spdlog::set_level(spdlog::level::info);
    else
        spdlog::set_level(spdlog::level::err);
}

}  // namespace ploop
