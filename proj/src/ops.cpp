#include "ddc/ops.hpp"

#include <unordered_map>

namespace ddc {

namespace {

const std::unordered_map<AtomId, OpDef> &infix_table() {
  static const std::unordered_map<AtomId, OpDef> table = [] {
    std::unordered_map<AtomId, OpDef> t;
    t[intern(":-")] = {1200, Assoc::XFX};
    t[intern(";")] = {1100, Assoc::XFY};
    t[intern("->")] = {1050, Assoc::XFY};
    t[intern(",")] = {1000, Assoc::XFY};
    for (const char *op : {"=", "\\=", "==", "\\==", "is", "<", ">", "=<", ">=", "=:=", "=\\=",
                           "@<", "@>", "@=<", "@>="})
      t[intern(op)] = {700, Assoc::XFX};
    t[intern("+")] = {500, Assoc::YFX};
    t[intern("-")] = {500, Assoc::YFX};
    t[intern("*")] = {400, Assoc::YFX};
    t[intern("/")] = {400, Assoc::YFX};
    return t;
  }();
  return table;
}

const std::unordered_map<AtomId, OpDef> &prefix_table() {
  static const std::unordered_map<AtomId, OpDef> table = [] {
    std::unordered_map<AtomId, OpDef> t;
    t[intern("-")] = {200, Assoc::FY};
    return t;
  }();
  return table;
}

} // namespace

std::optional<OpDef> infix_op(AtomId name) {
  const auto &t = infix_table();
  if (auto it = t.find(name); it != t.end())
    return it->second;
  return std::nullopt;
}

std::optional<OpDef> prefix_op(AtomId name) {
  const auto &t = prefix_table();
  if (auto it = t.find(name); it != t.end())
    return it->second;
  return std::nullopt;
}

bool is_operator(AtomId name) { return infix_op(name) || prefix_op(name); }

} // namespace ddc
