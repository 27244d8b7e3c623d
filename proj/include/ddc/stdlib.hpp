#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddc/database.hpp"

namespace ddc {

// One file of the object-language library corpus under lib/.
struct LibraryFile {
  std::string name;
  std::string_view source;
  std::vector<std::string> provides; // "name/arity"
  std::vector<std::string> requires_;
  std::string assumptions;
};

const std::vector<LibraryFile> &libraries();
const LibraryFile *find_library(std::string_view name);

// The named libraries and their dependencies, dependencies first, each once.
// "all" names every library. Throws LoadError on an unknown name.
std::vector<const LibraryFile *> resolve_libraries(const std::vector<std::string> &names);

// Consults the resolved libraries into db.
void load_libraries(Database &db, const std::vector<std::string> &names);

} // namespace ddc
