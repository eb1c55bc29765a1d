// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace termcalc::cli {

/// Runs the command-line interface. Exit codes: 0 affirmative result,
/// 1 negative/refuted result, 2 unknown within budget, 64 usage error,
/// 65 parse or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace termcalc::cli
