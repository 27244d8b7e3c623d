#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddc/reader.hpp"
#include "ddc/term.hpp"

namespace ddc {

struct PredicateKey {
  AtomId name;
  std::uint32_t arity;

  friend auto operator<=>(const PredicateKey &, const PredicateKey &) = default;
};

std::string to_string(PredicateKey key);

// Control constructs and builtins the engine evaluates natively. User
// clauses may not redefine them.
bool is_builtin(PredicateKey key);

// A renamed-apart clause, ready to be tried against a call.
struct ClauseInstance {
  Term head;
  Term body;
};

// Ordered clause store. Clauses live in the database's own store and are
// copied into an engine's store on lookup, so a loaded database can be
// shared read-only by any number of engines.
class Database {
public:
  // Store that parse_program should target for clauses passed to consult.
  Store &store() { return store_; }
  const Store &store() const { return store_; }

  // Appends clauses (built in store()) under their head's name/arity.
  // Throws LoadError when a head names a builtin.
  void consult(std::span<const SourceClause> clauses);
  void consult_text(std::string_view text, std::string_view origin = {});

  std::span<const SourceClause> clauses(PredicateKey key) const;
  bool defines(PredicateKey key) const { return !clauses(key).empty(); }
  std::vector<PredicateKey> predicates() const;

  // Fresh renamings into `target` of the clauses whose head may unify with
  // `call`, in clause order. Heads whose principal functors clash with the
  // call's arguments are skipped.
  std::vector<ClauseInstance> matching_clauses(Store &target, Term call) const;

private:
  Store store_;
  std::map<PredicateKey, std::vector<SourceClause>> preds_;
};

// Builds the goal trying each clause in order: `fail` for none,
// `(Call=Head, Body)` for one, and a right-nested disjunction otherwise.
Term disjoin_clauses(Store &s, Term call, std::span<const ClauseInstance> clauses);

} // namespace ddc
