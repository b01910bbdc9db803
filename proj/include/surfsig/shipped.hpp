#pragma once

// Atlases, fibrations and pipelines compiled into the library.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace surfsig {

namespace detail {
struct EmbeddedFile {
  const char* path;
  const char* content;
};
const std::vector<EmbeddedFile>& embedded_files();
}  // namespace detail

/// Contents of a shipped file by relative path, e.g. "fibrations/prop45.fib".
std::optional<std::string> shipped_file(std::string_view path);
std::vector<std::string> shipped_paths();

/// Reads path from disk, falling back to the shipped copy (also accepting a
/// bare file name such as "prop45.fib"). Throws surfsig::Error when neither exists.
std::string read_text(const std::string& path);

}  // namespace surfsig
