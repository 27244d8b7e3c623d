#include "ddc/stdlib.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "ddc/errors.hpp"

namespace ddc {

namespace detail {
extern const std::pair<std::string_view, std::string_view> embedded_libraries[];
extern const unsigned embedded_library_count;
} // namespace detail

namespace {

std::string_view embedded_source(std::string_view name) {
  for (unsigned i = 0; i < detail::embedded_library_count; ++i)
    if (detail::embedded_libraries[i].first == name)
      return detail::embedded_libraries[i].second;
  throw LoadError("library source missing from build: " + std::string(name));
}

std::vector<LibraryFile> build_registry() {
  struct Meta {
    const char *name;
    std::vector<std::string> provides;
    std::vector<std::string> requires_;
    const char *assumptions;
  };
  const std::vector<Meta> meta = {
      {"prelude",
       {"member/2", "length/2", "length_acc/3", "append/3", "toplevel/1", "toplevel_result/3",
        "solutions/1", "solutions_result/3"},
       {},
       "length/2 expects a proper list."},
      {"findall", {"findall/3", "findall_result/3"}, {}, "The goal does not call shift/1."},
      {"cut",
       {"cut/0", "scope/1", "scope_result/3"},
       {},
       "cut/0 is only called beneath scope/1; scopes are not nested."},
      {"bb",
       {"bound/1", "bb/4", "bb_result/4"},
       {},
       "Prunable branches start with bound(V), V a lower bound under @<."},
      {"nn",
       {"nn/3", "branch/6", "run_nn/3"},
       {"bb", "prelude"},
       "Ground BSP trees; squared distances below 10."},
      {"prism",
       {"msw/2", "prob/1", "prob/2", "analyze_prob/3", "msw_prob/6"},
       {},
       "Exclusive programs; switches declared with values_x/3."},
      {"problog",
       {"fact/1", "is_true/2", "is_false/2", "problog/1", "problog/2", "analyze_problog/2"},
       {"prism", "not", "prelude"},
       "Definite, non-looping programs; facts are [t,f] switches."},
      {"engines",
       {"engines/1", "engines/2", "new_engine/3", "get/2", "return/1", "engines_result/4",
        "update/4", "run_engine/3", "run_engine_result/4"},
       {"prelude"},
       "Engine identifiers come from new_engine/3."},
      {"not", {"not/1"}, {}, "The goal does not call shift/1."},
      {"nd_reset", {"nd_reset/3"}, {}, ""},
  };
  std::vector<LibraryFile> out;
  for (const Meta &m : meta)
    out.push_back({m.name, embedded_source(m.name), m.provides, m.requires_, m.assumptions});
  return out;
}

} // namespace

const std::vector<LibraryFile> &libraries() {
  static const std::vector<LibraryFile> registry = build_registry();
  return registry;
}

const LibraryFile *find_library(std::string_view name) {
  for (const LibraryFile &lib : libraries())
    if (lib.name == name)
      return &lib;
  return nullptr;
}

std::vector<const LibraryFile *> resolve_libraries(const std::vector<std::string> &names) {
  std::vector<const LibraryFile *> order;
  std::set<std::string> seen;
  std::function<void(const std::string &)> visit = [&](const std::string &name) {
    if (seen.contains(name))
      return;
    const LibraryFile *lib = find_library(name);
    if (!lib)
      throw LoadError("unknown library: " + name);
    seen.insert(name);
    for (const std::string &dep : lib->requires_)
      visit(dep);
    order.push_back(lib);
  };
  for (const std::string &name : names) {
    if (name == "all") {
      for (const LibraryFile &lib : libraries())
        visit(lib.name);
    } else {
      visit(name);
    }
  }
  return order;
}

void load_libraries(Database &db, const std::vector<std::string> &names) {
  for (const LibraryFile *lib : resolve_libraries(names))
    db.consult_text(lib->source, "lib/" + lib->name + ".pl");
}

} // namespace ddc
