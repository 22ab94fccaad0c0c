#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <memory>
#include <string>

#include "ifol/error.hpp"
#include "ifol/parser.hpp"

namespace ifol::testing {

inline std::string fixture(const std::string& name) { return std::string(IFOL_FIXTURE_DIR) + "/" + name; }

inline std::unique_ptr<Workspace> load(const std::string& text) { return load_workspace_text(text); }

/// Kind of the ifol::Error thrown by fn, or nullopt when it does not throw.
inline std::optional<ErrorKind> error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace ifol::testing

#define EXPECT_IFOL_ERROR(stmt, k) EXPECT_EQ(::ifol::testing::error_kind([&] { (void)(stmt); }), ::ifol::ErrorKind::k)
