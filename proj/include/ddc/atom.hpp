#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ddc {

// Interned atom and functor names. Ids are process-wide and stable, so terms
// living in different stores can be compared and copied without translation.
using AtomId = std::uint32_t;

AtomId intern(std::string_view name);
const std::string &atom_name(AtomId id);

namespace atoms {
// Names the engine dispatches on. Initialised on first use of the interner.
inline const AtomId nil = intern("[]");
inline const AtomId dot = intern(".");
inline const AtomId true_ = intern("true");
inline const AtomId fail = intern("fail");
inline const AtomId false_ = intern("false");
inline const AtomId cut = intern("!");
inline const AtomId comma = intern(",");
inline const AtomId semicolon = intern(";");
inline const AtomId arrow = intern("->");
inline const AtomId neck = intern(":-");
inline const AtomId conj = intern("conj");
inline const AtomId shift = intern("shift");
inline const AtomId reset = intern("reset");
inline const AtomId alt = intern("alt");
inline const AtomId success = intern("success");
inline const AtomId failure = intern("failure");
inline const AtomId call = intern("call");
inline const AtomId eq = intern("=");
inline const AtomId minus = intern("-");
inline const AtomId plus = intern("+");
inline const AtomId star = intern("*");
inline const AtomId slash = intern("/");
} // namespace atoms

} // namespace ddc
