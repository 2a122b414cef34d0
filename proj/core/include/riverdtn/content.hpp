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

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace riverdtn {

/// Application classes carried by the pier servers.
enum class ContentClass { Text, Audio, Video };

constexpr std::array<ContentClass, 3> kAllContentClasses = {ContentClass::Text, ContentClass::Audio,
                                                            ContentClass::Video};

constexpr std::string_view to_string(ContentClass c) noexcept {
  switch (c) {
    case ContentClass::Text: return "text";
    case ContentClass::Audio: return "audio";
    case ContentClass::Video: return "video";
  }
  return "?";
}

constexpr std::optional<ContentClass> parse_content_class(std::string_view s) noexcept {
  for (auto c : kAllContentClasses) {
    if (to_string(c) == s) {
      return c;
    }
  }
  return std::nullopt;
}

constexpr std::size_t index_of(ContentClass c) noexcept { return static_cast<std::size_t>(c); }

/// Deflate savings each class is calibrated to: text shrinks by half, audio
/// and video (already codec-compressed) by 7% and 5%.
constexpr double default_target_ratio(ContentClass c) noexcept {
  switch (c) {
    case ContentClass::Text: return 0.50;
    case ContentClass::Audio: return 0.07;
    case ContentClass::Video: return 0.05;
  }
  return 0.0;
}

}  // namespace riverdtn
