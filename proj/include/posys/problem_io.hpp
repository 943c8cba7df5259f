#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "posys/framework.hpp"

namespace posys::io {

/// Parses the problem document: fields "A" (rows of rationals: integers,
/// "p/q" / decimal strings, or numbers), "B" (as "A"; non-integer JSON
/// numbers route the instance to the binary64 exponent backend), "c"
/// (positive rationals), optional "classes" (contiguous block sizes) and
/// "tolerances" ({"rank": r, "condition": t}). Throws ParseError or
/// DimensionMismatch.
framework::ProblemInstance parse_problem(const std::string& json_text);

/// Lossless for rational data: rationals are emitted as strings.
std::string serialize_problem(const framework::ProblemInstance& p);

/// Bundled regression instances, (name, document) pairs.
const std::vector<std::pair<std::string, std::string>>& bundled_fixtures();
const std::string& fixture(const std::string& name);

/// CLI entry point: classify | solve | bound | certify | oracle | curve |
/// examples. Returns the process exit code (0 ok, 2 empty/infeasible,
/// 1 error, 64 usage).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posys::io
