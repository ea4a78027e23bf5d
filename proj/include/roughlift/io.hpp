// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roughlift/norms.hpp"
#include "roughlift/optimal_lift.hpp"
#include "roughlift/paths.hpp"

namespace roughlift {

// CSV with header `t,x1,...,xd` and one row per dyadic time: 2^J + 1 rows,
// strictly increasing and equally spaced t. Any interval [t0, t1] is mapped
// affinely onto [0, 1]. ParseError messages carry `source:line:column`.
SampledPath parse_path_csv(std::string_view text, const std::string& source = "<input>");
SampledPath read_path_csv(const std::string& file);
std::string path_csv(const SampledPath& x);

// {"dim", "level", "depth", "elements": [[[word, coeff], ...] per time],
//  "metadata": {...}}; words are arrays of 1-based letters. `metadata_json`
// must hold a JSON object.
std::string group_path_json(const GroupPath& x, std::string_view metadata_json = "{}");
GroupPath parse_group_path_json(std::string_view text, std::string* metadata_json = nullptr);

std::string norm_reports_json(const std::vector<NormReport>& reports);
std::string inhom_report_json(const InhomReport& r);
// Solver report; `restarts_agreement` < 0 is written as null.
std::string optimal_lift_report_json(const OptimalLift& r, double restarts_agreement);

std::string read_file(const std::string& file);
// Writes to a temporary file next to `file` and renames it into place.
void write_file_atomic(const std::string& file, std::string_view content);

}  // namespace roughlift
