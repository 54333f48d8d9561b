// Copyright 2026 The docnav Authors.
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

#ifndef DOCNAV_REPORT_H_
#define DOCNAV_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "docnav/store.h"

namespace docnav {

enum class ReportFormat { kJson, kHtml };

ReportFormat report_format_from(std::string_view s);

// Writes the given runs (all runs when empty) under out_dir and returns the
// files written. JSON copies run.json and the cluster records. HTML is a
// static site: index.html lists clusters by size, with one page per
// cluster, person and article. Links are only emitted to pages inside the
// site. Throws NotFound for an unknown run.
std::vector<std::filesystem::path> render_report(const Store &store,
                                                 std::vector<std::string> run_ids,
                                                 ReportFormat format,
                                                 const std::filesystem::path &out_dir);

std::string html_escape(std::string_view s);

}  // namespace docnav

#endif  // DOCNAV_REPORT_H_
