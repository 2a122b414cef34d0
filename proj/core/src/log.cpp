// Copyright 2026 The riverdtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riverdtn/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace riverdtn {

namespace {
spdlog::logger& logger() {
  static auto instance = [] {
    auto l = spdlog::stderr_color_mt("riverdtn");
    l->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
    l->set_level(spdlog::level::warn);
    return l;
  }();
  return *instance;
}
}  // namespace

void set_log_level(LogLevel level) {
  using spdlog::level::level_enum;
  static constexpr level_enum kMap[] = {level_enum::trace, level_enum::debug, level_enum::info,
                                        level_enum::warn,  level_enum::err,   level_enum::off};
  logger().set_level(kMap[static_cast<int>(level)]);
}

bool configure_logging_from_env() {
  const char* raw = std::getenv("RIVERDTN_LOG");
  if (raw == nullptr || *raw == '\0') {
    set_log_level(LogLevel::Warn);
    return true;
  }
  const std::string value(raw);
  static constexpr std::pair<const char*, LogLevel> kNames[] = {
      {"trace", LogLevel::Trace}, {"debug", LogLevel::Debug}, {"info", LogLevel::Info},
      {"warn", LogLevel::Warn},   {"error", LogLevel::Error}, {"off", LogLevel::Off}};
  for (const auto& [name, level] : kNames) {
    if (value == name) {
      set_log_level(level);
      return true;
    }
  }
  set_log_level(LogLevel::Warn);
  logger().warn("RIVERDTN_LOG={} not recognized; using warn", value);
  return false;
}

void log_debug(std::string_view message) { logger().debug("{}", message); }
void log_info(std::string_view message) { logger().info("{}", message); }
void log_warn(std::string_view message) { logger().warn("{}", message); }

}  // namespace riverdtn
