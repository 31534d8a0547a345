#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rspin/io.hpp"

namespace rspin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;

enum class OutputFormat { json, table };

/// Records are emitted one per line as JSON, or re-rendered as tab-delimited
/// tables grouped by record kind.
void emit(const std::vector<Json>& records, OutputFormat format, std::ostream& out);

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rspin::cli
