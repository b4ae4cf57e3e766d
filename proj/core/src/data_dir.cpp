#include "x0quintic/data_dir.hpp"

#include <cstdlib>
#include <filesystem>

#include "x0quintic/error.hpp"

namespace x0q {

std::string data_dir() {
  namespace fs = std::filesystem;
  if (const char* env = std::getenv("X0Q_DATA_DIR"); env && *env) return env;
  for (const char* dir : {X0Q_BUILD_DATA_DIR, X0Q_INSTALL_DATA_DIR}) {
    std::error_code ec;
    if (fs::exists(fs::path(dir) / "facts.json", ec)) return dir;
  }
  throw Error(Errc::snapshot_miss, "bundled data directory not found; set X0Q_DATA_DIR");
}

std::string data_path(const std::string& file) { return (std::filesystem::path(data_dir()) / file).string(); }

}  // namespace x0q
