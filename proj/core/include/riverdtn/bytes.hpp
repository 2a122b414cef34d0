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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace riverdtn {

/// Immutable, cheaply copyable byte buffer. Copies share storage.
/// Equality compares contents.
class SharedBytes {
public:
  SharedBytes() = default;
  explicit SharedBytes(std::vector<std::uint8_t> bytes)
      : data_(std::make_shared<const std::vector<std::uint8_t>>(std::move(bytes))) {}

  std::span<const std::uint8_t> span() const noexcept {
    return data_ ? std::span<const std::uint8_t>(*data_) : std::span<const std::uint8_t>();
  }
  std::size_t size() const noexcept { return data_ ? data_->size() : 0; }
  bool empty() const noexcept { return size() == 0; }

  /// Identity of the underlying storage; stable for the lifetime of any copy.
  const void* identity() const noexcept { return data_.get(); }

  friend bool operator==(const SharedBytes& a, const SharedBytes& b) noexcept {
    if (a.data_ == b.data_) {
      return true;
    }
    const auto x = a.span();
    const auto y = b.span();
    return std::equal(x.begin(), x.end(), y.begin(), y.end());
  }

private:
  std::shared_ptr<const std::vector<std::uint8_t>> data_;
};

}  // namespace riverdtn
