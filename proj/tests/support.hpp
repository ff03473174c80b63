#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "doctest.h"
#include "ploop/error.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(PLOOP_FIXTURE_DIR) / name; }

// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<ploop::ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const ploop::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace testing

#define CHECK_ERROR(expr, expected)                                              \
    do {                                                                         \
        auto got_ = ::testing::error_of([&] { (void)(expr); });                  \
        CHECK_MESSAGE(got_ == std::optional<ploop::ErrorCode>(expected), #expr); \
    } while (0)
