// Copyright 2026 The corefcs Authors.
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


#include "corefcs/base/resources.h"

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {
namespace internal {
const std::string* EmbeddedResource(std::string_view name);
}  // namespace internal

const std::string& Resource(std::string_view name) {
  const std::string* text = internal::EmbeddedResource(name);
  if (text == nullptr) {
    throw Error(fmt::format("no embedded resource named '{}'", name));
  }
  return *text;
}

}  // namespace corefcs
