#ifndef HDA_PROCESS_HPP
#define HDA_PROCESS_HPP

#include <memory>
#include <string>
#include <vector>

#include "hda/sync_algebra.hpp"

namespace hda {

enum class ProcKind { Nil, Prefix, Sum, Par, Restrict, Rec, Var };

class ProcTerm;
using ProcPtr = std::shared_ptr<const ProcTerm>;

// Immutable process syntax tree. Shared subtrees are fine; equality is structural.
class ProcTerm {
 public:
  static ProcPtr nil();
  static ProcPtr prefix(std::string action, ProcPtr body);
  static ProcPtr sum(ProcPtr left, ProcPtr right);
  static ProcPtr par(ProcPtr left, ProcPtr right);
  static ProcPtr restrict(std::string action, ProcPtr body);
  static ProcPtr rec(std::string var, ProcPtr body);
  static ProcPtr var(std::string name);

  ProcKind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // action or variable
  const ProcPtr& left() const { return left_; }      // body of unary nodes
  const ProcPtr& right() const { return right_; }

  std::size_t size() const;  // node count

 private:
  ProcTerm(ProcKind k, std::string n, ProcPtr l, ProcPtr r)
      : kind_(k), name_(std::move(n)), left_(std::move(l)), right_(std::move(r)) {}
  ProcKind kind_;
  std::string name_;
  ProcPtr left_, right_;
};

bool equal(const ProcPtr& a, const ProcPtr& b);

// Minimal-parenthesis concrete syntax; parse(format(t)) == t.
std::string format(const ProcPtr& term);

// Parses the grammar
//   sum  := par ('+' par)*            left-assoc
//   par  := pre ('||' pre)*           left-assoc, binds tighter than '+'
//   pre  := ident '.' pre | atom
//   atom := 'nil' | 'nu' ident '(' sum ')' | 'rec' ident '(' sum ')'
//         | '(' sum ')' | ident       (variable)
// checking that actions are in the alphabet, variables are bound,
// and every rec variable is guarded. Throws UserError with position info.
ProcPtr parse(const std::string& text, const SyncAlgebra& alg);

// Capture-avoiding substitution of a closed replacement for free occurrences.
ProcPtr substitute(const ProcPtr& term, const std::string& var, const ProcPtr& replacement);

void free_vars(const ProcPtr& term, std::vector<std::string>& out);
bool is_closed(const ProcPtr& term);

// Every rec binder's free occurrences sit under at least one prefix.
// parse() guarantees this; hand-built terms should be checked before
// stepping or interpreting them.
bool is_guarded(const ProcPtr& term);

}  // namespace hda

#endif
