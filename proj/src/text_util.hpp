// Copyright 2026 The dgsched Authors
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

#include <string>
#include <string_view>
#include <vector>

namespace dgs::detail {

// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

// Shortest round-trip decimal representation.
std::string format_double(double v);

// Left-aligned columns separated by two spaces, trailing blanks trimmed.
std::string align_columns(const std::vector<std::vector<std::string>>& rows);

}  // namespace dgs::detail
