#pragma once

#include <string>

namespace x0q {

// Directory holding the bundled data files. Order: $X0Q_DATA_DIR, the source
// tree (for uninstalled builds), then the install prefix.
std::string data_dir();
std::string data_path(const std::string& file);

}  // namespace x0q
