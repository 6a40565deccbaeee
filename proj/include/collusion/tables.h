// Copyright 2026 The Collusion Lab Authors
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

#ifndef COLLUSION_TABLES_H_
#define COLLUSION_TABLES_H_

#include <string>
#include <utility>
#include <vector>

#include "collusion/runner.h"

namespace collusion {

// File name (relative to the output directory) and CSV contents.
using TableFile = std::pair<std::string, std::string>;

// The nine tables under tables/ plus scatter_delta_rpdi.csv. Homogeneous
// cells report the two-firm mean; absent cells print NA. Rows list only the
// algorithms (or pairings) present in `summaries`, in a fixed order, so the
// output is a pure function of its input.
std::vector<TableFile> MakeTables(const std::vector<CellSummary>& summaries);

// Returns the files that could not be written.
std::vector<std::string> WriteTables(const std::vector<CellSummary>& summaries,
                                     const std::string& output_dir);

}  // namespace collusion

#endif  // COLLUSION_TABLES_H_
