#include "surfsig/shipped.hpp"

#include "surfsig/errors.hpp"

#include <fstream>
#include <sstream>

namespace surfsig {

std::optional<std::string> shipped_file(std::string_view path) {
  for (const auto& f : detail::embedded_files())
    if (path == f.path) return std::string(f.content);
  return std::nullopt;
}

std::vector<std::string> shipped_paths() {
  std::vector<std::string> out;
  for (const auto& f : detail::embedded_files()) out.emplace_back(f.path);
  return out;
}

std::string read_text(const std::string& path) {
  if (std::ifstream in{path}) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (auto s = shipped_file(path)) return *s;
  for (const char* dir : {"atlases/", "fibrations/", "pipelines/"})
    if (auto s = shipped_file(std::string(dir) + path)) return *s;
  throw Error("cannot open " + path);
}

}  // namespace surfsig
