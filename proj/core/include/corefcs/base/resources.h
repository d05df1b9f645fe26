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


// Text resources compiled into the library.

#ifndef COREFCS_BASE_RESOURCES_H_
#define COREFCS_BASE_RESOURCES_H_

#include <string>
#include <string_view>

namespace corefcs {

// Returns the resource with the given base name ("mention_check",
// "cluster_check", "cluster_split", "pronouns"). Throws Error if unknown.
const std::string& Resource(std::string_view name);

}  // namespace corefcs

#endif  // COREFCS_BASE_RESOURCES_H_
