#include "hda/process.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hda/errors.hpp"

namespace hda {

ProcPtr ProcTerm::nil() {
  static const ProcPtr instance(new ProcTerm(ProcKind::Nil, {}, nullptr, nullptr));
  return instance;
}
ProcPtr ProcTerm::prefix(std::string action, ProcPtr body) {
  return ProcPtr(new ProcTerm(ProcKind::Prefix, std::move(action), std::move(body), nullptr));
}
ProcPtr ProcTerm::sum(ProcPtr l, ProcPtr r) {
  return ProcPtr(new ProcTerm(ProcKind::Sum, {}, std::move(l), std::move(r)));
}
ProcPtr ProcTerm::par(ProcPtr l, ProcPtr r) {
  return ProcPtr(new ProcTerm(ProcKind::Par, {}, std::move(l), std::move(r)));
}
ProcPtr ProcTerm::restrict(std::string action, ProcPtr body) {
  return ProcPtr(new ProcTerm(ProcKind::Restrict, std::move(action), std::move(body), nullptr));
}
ProcPtr ProcTerm::rec(std::string var, ProcPtr body) {
  return ProcPtr(new ProcTerm(ProcKind::Rec, std::move(var), std::move(body), nullptr));
}
ProcPtr ProcTerm::var(std::string name) {
  return ProcPtr(new ProcTerm(ProcKind::Var, std::move(name), nullptr, nullptr));
}

std::size_t ProcTerm::size() const {
  std::size_t s = 1;
  if (left_) s += left_->size();
  if (right_) s += right_->size();
  return s;
}

bool equal(const ProcPtr& a, const ProcPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->name() != b->name()) return false;
  return equal(a->left(), b->left()) && equal(a->right(), b->right());
}

namespace {

// Precedence levels: 0 sum, 1 par, 2 prefix, 3 atom.
int level(const ProcTerm& t) {
  switch (t.kind()) {
    case ProcKind::Sum: return 0;
    case ProcKind::Par: return 1;
    case ProcKind::Prefix: return 2;
    default: return 3;
  }
}

void render(const ProcPtr& t, int need, std::ostream& out) {
  const bool parens = level(*t) < need;
  if (parens) out << "(";
  switch (t->kind()) {
    case ProcKind::Nil: out << "nil"; break;
    case ProcKind::Var: out << t->name(); break;
    case ProcKind::Prefix:
      out << t->name() << ".";
      render(t->left(), 2, out);
      break;
    case ProcKind::Sum:
      render(t->left(), 0, out);
      out << " + ";
      render(t->right(), 1, out);
      break;
    case ProcKind::Par:
      render(t->left(), 1, out);
      out << " || ";
      render(t->right(), 2, out);
      break;
    case ProcKind::Restrict:
      out << "nu " << t->name() << " (";
      render(t->left(), 0, out);
      out << ")";
      break;
    case ProcKind::Rec:
      out << "rec " << t->name() << " (";
      render(t->left(), 0, out);
      out << ")";
      break;
  }
  if (parens) out << ")";
}

bool reserved(const std::string& w) { return w == "nil" || w == "rec" || w == "nu"; }

struct Parser {
  const std::string& text;
  const SyncAlgebra& alg;
  std::size_t pos = 0;
  std::vector<std::string> bound;  // rec binders in scope

  [[noreturn]] void fail(const std::string& msg) {
    throw UserError("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      fail("expected identifier");
    ++pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  ProcPtr parse_sum() {
    ProcPtr t = parse_par();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '+') {
        ++pos;
        t = ProcTerm::sum(t, parse_par());
      } else {
        break;
      }
    }
    return t;
  }

  ProcPtr parse_par() {
    ProcPtr t = parse_prefix();
    while (eat("||")) t = ProcTerm::par(t, parse_prefix());
    return t;
  }

  ProcPtr parse_prefix() {
    skip_ws();
    if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
      std::size_t save = pos;
      std::string word = ident();
      if (!reserved(word) && peek('.')) {
        ++pos;  // consume '.'
        if (!alg.has_action(word)) {
          pos = save;
          fail("unknown action '" + word + "'");
        }
        return ProcTerm::prefix(word, parse_prefix());
      }
      pos = save;
    }
    return parse_atom();
  }

  ProcPtr parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      ProcPtr t = parse_sum();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    std::size_t save = pos;
    std::string word = ident();
    if (word == "nil") return ProcTerm::nil();
    if (word == "nu" || word == "rec") {
      std::string binder = ident();
      if (reserved(binder)) fail("reserved word '" + binder + "' cannot be a binder");
      if (!eat("(")) fail("expected '(' after " + word + " " + binder);
      if (word == "nu" && !alg.has_action(binder)) fail("unknown action '" + binder + "'");
      if (word == "rec") bound.push_back(binder);
      ProcPtr body = parse_sum();
      if (word == "rec") bound.pop_back();
      if (!eat(")")) fail("expected ')'");
      return word == "nu" ? ProcTerm::restrict(binder, body) : ProcTerm::rec(binder, body);
    }
    // A bare identifier is a recursion variable.
    if (std::find(bound.begin(), bound.end(), word) == bound.end()) {
      pos = save;
      fail("unbound variable '" + word + "'");
    }
    return ProcTerm::var(word);
  }
};

// Every free occurrence of `var` must lie under at least one prefix.
bool guarded_in(const ProcPtr& t, const std::string& var, int prefix_depth) {
  switch (t->kind()) {
    case ProcKind::Nil: return true;
    case ProcKind::Var: return t->name() != var || prefix_depth > 0;
    case ProcKind::Prefix: return guarded_in(t->left(), var, prefix_depth + 1);
    case ProcKind::Sum:
    case ProcKind::Par:
      return guarded_in(t->left(), var, prefix_depth) &&
             guarded_in(t->right(), var, prefix_depth);
    case ProcKind::Restrict: return guarded_in(t->left(), var, prefix_depth);
    case ProcKind::Rec:
      if (t->name() == var) return true;  // shadowed
      return guarded_in(t->left(), var, prefix_depth);
  }
  return true;
}

void check_guardedness(const ProcPtr& t) {
  if (!t) return;
  if (t->kind() == ProcKind::Rec && !guarded_in(t->left(), t->name(), 0))
    throw UserError("unguarded variable '" + t->name() + "' in rec " + t->name() + " (...)");
  check_guardedness(t->left());
  check_guardedness(t->right());
}

}  // namespace

std::string format(const ProcPtr& term) {
  std::ostringstream out;
  render(term, 0, out);
  return out.str();
}

ProcPtr parse(const std::string& text, const SyncAlgebra& alg) {
  Parser p{text, alg, 0, {}};
  ProcPtr t = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  check_guardedness(t);
  return t;
}

ProcPtr substitute(const ProcPtr& t, const std::string& var, const ProcPtr& repl) {
  switch (t->kind()) {
    case ProcKind::Nil: return t;
    case ProcKind::Var: return t->name() == var ? repl : t;
    case ProcKind::Prefix: return ProcTerm::prefix(t->name(), substitute(t->left(), var, repl));
    case ProcKind::Sum:
      return ProcTerm::sum(substitute(t->left(), var, repl), substitute(t->right(), var, repl));
    case ProcKind::Par:
      return ProcTerm::par(substitute(t->left(), var, repl), substitute(t->right(), var, repl));
    case ProcKind::Restrict:
      return ProcTerm::restrict(t->name(), substitute(t->left(), var, repl));
    case ProcKind::Rec:
      if (t->name() == var) return t;  // shadowed
      return ProcTerm::rec(t->name(), substitute(t->left(), var, repl));
  }
  return t;
}

void free_vars(const ProcPtr& t, std::vector<std::string>& out) {
  struct Walk {
    std::vector<std::string> bound;
    std::vector<std::string>* out;
    void go(const ProcPtr& t) {
      if (!t) return;
      if (t->kind() == ProcKind::Var) {
        if (std::find(bound.begin(), bound.end(), t->name()) == bound.end())
          out->push_back(t->name());
        return;
      }
      if (t->kind() == ProcKind::Rec) {
        bound.push_back(t->name());
        go(t->left());
        bound.pop_back();
        return;
      }
      go(t->left());
      go(t->right());
    }
  } w{{}, &out};
  w.go(t);
}

bool is_closed(const ProcPtr& t) {
  std::vector<std::string> fv;
  free_vars(t, fv);
  return fv.empty();
}

bool is_guarded(const ProcPtr& t) {
  if (!t) return true;
  if (t->kind() == ProcKind::Rec && !guarded_in(t->left(), t->name(), 0)) return false;
  return is_guarded(t->left()) && is_guarded(t->right());
}

}  // namespace hda
