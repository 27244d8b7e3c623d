#include "ddc/atom.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace ddc {

namespace {

struct AtomTable {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, AtomId> ids;
};

AtomTable &table() {
  static AtomTable instance;
  return instance;
}

} // namespace

AtomId intern(std::string_view name) {
  auto &t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(name); it != t.ids.end())
      return it->second;
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end())
    return it->second;
  const auto id = static_cast<AtomId>(t.names.size());
  const std::string &stored = t.names.emplace_back(name);
  t.ids.emplace(std::string_view(stored), id);
  return id;
}

const std::string &atom_name(AtomId id) {
  auto &t = table();
  std::shared_lock lock(t.mutex);
  return t.names.at(id);
}

} // namespace ddc
