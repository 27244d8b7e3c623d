#pragma once

#include <optional>

#include "ddc/atom.hpp"

namespace ddc {

enum class Assoc { XFX, XFY, YFX, FY, FX };

struct OpDef {
  int priority;
  Assoc assoc;

  // Maximum priorities admitted for the left and right operands.
  int left_max() const { return assoc == Assoc::YFX ? priority : priority - 1; }
  int right_max() const {
    return (assoc == Assoc::XFY || assoc == Assoc::FY) ? priority : priority - 1;
  }
};

// The fixed operator table of the object language.
std::optional<OpDef> infix_op(AtomId name);
std::optional<OpDef> prefix_op(AtomId name);
bool is_operator(AtomId name);

} // namespace ddc
