// Copyright (C) 2026 The citysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "citysim/lcd.h"

namespace citysim {

void LcdGrid::SetRow(std::size_t row, std::string_view text) {
  std::string& target = rows_.at(row);
  for (std::size_t i = 0; i < kColumns; ++i) {
    const char c = i < text.size() ? text[i] : ' ';
    target[i] = IsPrintable(c) ? c : '?';
  }
}

bool LcdGrid::blank() const {
  for (const auto& row : rows_) {
    if (row.find_first_not_of(' ') != std::string::npos) return false;
  }
  return true;
}

}  // namespace citysim
