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

#ifndef CITYSIM_LCD_H_
#define CITYSIM_LCD_H_

#include <array>
#include <string>
#include <string_view>

namespace citysim {

// 16x2 character display. Rows are always exactly 16 printable characters.
class LcdGrid {
 public:
  static constexpr std::size_t kColumns = 16;
  static constexpr std::size_t kRows = 2;

  LcdGrid() { Clear(); }

  void Clear() { rows_.fill(std::string(kColumns, ' ')); }
  // Writes text left-aligned, truncating or space-padding to 16 columns.
  // Non-printable characters are shown as '?'.
  void SetRow(std::size_t row, std::string_view text);
  const std::string& row(std::size_t index) const { return rows_.at(index); }
  const std::array<std::string, kRows>& rows() const { return rows_; }
  bool blank() const;

 private:
  std::array<std::string, kRows> rows_;
};

inline bool IsPrintable(char c) { return c >= 0x20 && c <= 0x7e; }

}  // namespace citysim

#endif  // CITYSIM_LCD_H_
