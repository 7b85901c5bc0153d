#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cavitycool::cli {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_bad_input = 2 };

/// Flat key = value text with [sections]; keys before the first section
/// land in "global". A manifest written by a previous run (JSON) is accepted
/// too and yields the configuration it echoes.
using Section = std::map<std::string, std::string>;
using ConfigFile = std::map<std::string, Section>;

[[nodiscard]] ConfigFile parse_config(std::istream& in);
[[nodiscard]] ConfigFile parse_manifest(std::string_view json);
[[nodiscard]] ConfigFile load_config(const std::string& path);

/// SHA-1 of "blob <size>\0<content>", the content hash git uses.
[[nodiscard]] std::string git_blob_sha1(std::string_view content);

/// Shortest round-trip decimal form; the only float formatting used in output files.
[[nodiscard]] std::string format_double(double v);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cavitycool::cli
