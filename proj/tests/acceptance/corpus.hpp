/* Copyright (C) 2026 The tqc authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <vector>

#include "tqc/conic.hpp"

namespace tqc_tests {

// fixed 30-form corpus; admissibility is decided per prime at use sites
inline std::vector<tqc::TernaryForm> form_corpus() {
  return {
      tqc::TernaryForm(1, 0, 1, 0, 0, 1),  tqc::TernaryForm(1, 1, 1, 0, 0, 1),
      tqc::TernaryForm(1, 0, 1, 0, 0, -1), tqc::TernaryForm(1, 0, 2, 0, 0, 3),
      tqc::TernaryForm(2, 1, 3, 1, 1, 1),  tqc::TernaryForm(1, 1, 2, 3, 1, 5),
      tqc::TernaryForm(3, 2, 5, 1, 0, 2),  tqc::TernaryForm(1, 2, 7, 0, 3, 1),
      tqc::TernaryForm(2, 3, 4, 5, 1, 3),  tqc::TernaryForm(1, 0, 3, 2, 2, 7),
      tqc::TernaryForm(5, 1, 1, 0, 1, 2),  tqc::TernaryForm(1, 4, 2, 1, 3, 3),
      tqc::TernaryForm(2, 0, 3, 1, 0, 5),  tqc::TernaryForm(1, 1, 1, 1, 1, 2),
      tqc::TernaryForm(4, 1, 2, 3, 2, 1),  tqc::TernaryForm(1, 3, 1, 2, 0, 5),
      tqc::TernaryForm(3, 0, 1, 1, 2, 2),  tqc::TernaryForm(1, 2, 3, 4, 5, 6),
      tqc::TernaryForm(2, 1, 2, 1, 2, 1),  tqc::TernaryForm(1, 0, 1, 1, 1, 1),
      tqc::TernaryForm(1, 1, 3, 0, 2, 4),  tqc::TernaryForm(2, 2, 3, 1, 1, 7),
      tqc::TernaryForm(1, 0, 5, 2, 1, 3),  tqc::TernaryForm(3, 1, 4, 1, 5, 9),
      tqc::TernaryForm(1, 2, 2, 2, 1, 1),  tqc::TernaryForm(2, 1, 5, 3, 2, 1),
      tqc::TernaryForm(1, 1, 4, 2, 3, 5),  tqc::TernaryForm(4, 3, 2, 1, 2, 3),
      tqc::TernaryForm(1, 0, 2, 1, 1, 1),  tqc::TernaryForm(2, 3, 5, 7, 1, 1)};
}

}  // namespace tqc_tests
