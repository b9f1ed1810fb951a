#include "hda/sync_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "hda/errors.hpp"

namespace hda {

Label Label::from_string(const std::string& text) {
  if (text == "0") return idle();
  if (text == "bot") return bot();
  if (text.empty()) throw UserError("empty label");
  return action(text);
}

std::string Label::to_string() const {
  switch (tag_) {
    case Tag::Idle: return "0";
    case Tag::Bot: return "bot";
    default: return name_;
  }
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  if (ok) {
    out << "ok\n";
  } else {
    out << "invalid (" << violations.size() << " violation(s))\n";
    for (const auto& v : violations) out << "  " << v.axiom << ": " << v.witness << "\n";
  }
  return out.str();
}

int SyncAlgebra::code(const Label& l) const {
  if (l.is_idle()) return 0;
  if (l.is_bot()) return 1;
  auto it = index_.find(l.name());
  if (it == index_.end()) throw UserError("unknown label '" + l.name() + "'");
  return it->second + 2;
}

Label SyncAlgebra::label_of_code(int c) const {
  if (c == 0) return Label::idle();
  if (c == 1) return Label::bot();
  return Label::action(alphabet_[static_cast<std::size_t>(c - 2)]);
}

int SyncAlgebra::action_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UserError("unknown action '" + name + "'");
  return it->second;
}

Label SyncAlgebra::sync(const Label& x, const Label& y) const {
  return label_of_code(cell(code(x), code(y)));
}

Label SyncAlgebra::sync_actions(const std::string& a, const std::string& b) const {
  return sync(Label::action(a), Label::action(b));
}

bool SyncAlgebra::asynchronous(const std::string& action) const {
  return sync(Label::action(action), Label::idle()) == Label::action(action);
}

static void check_alphabet(const std::vector<std::string>& alphabet) {
  if (alphabet.size() > SyncAlgebra::kMaxAlphabet)
    throw UserError("alphabet larger than " + std::to_string(SyncAlgebra::kMaxAlphabet));
  for (const auto& a : alphabet) {
    if (a.empty() || a == "0" || a == "bot")
      throw UserError("reserved or empty action name '" + a + "'");
  }
}

SyncAlgebra SyncAlgebra::trivial(std::vector<std::string> alphabet) {
  check_alphabet(alphabet);
  SyncAlgebra alg;
  alg.alphabet_ = std::move(alphabet);
  for (std::size_t i = 0; i < alg.alphabet_.size(); ++i)
    alg.index_[alg.alphabet_[i]] = static_cast<int>(i);
  const int n = static_cast<int>(alg.n());
  alg.table_.assign(static_cast<std::size_t>(n) * n, 1);  // bot everywhere
  alg.cell(0, 0) = 0;                                     // sync(0,0) = 0
  for (int k = 2; k < n; ++k) {                           // sync(a,0) = a
    alg.cell(k, 0) = k;
    alg.cell(0, k) = k;
  }
  return alg;
}

std::string SyncAlgebra::ccs_complement(const std::string& name) {
  if (name == "tau") throw UserError("tau has no CCS complement");
  if (name.size() > 2 && name.compare(0, 2, "co") == 0) return name.substr(2);
  return "co" + name;
}

SyncAlgebra SyncAlgebra::ccs(std::vector<std::string> alphabet) {
  SyncAlgebra alg = trivial(std::move(alphabet));
  if (!alg.has_action("tau")) throw UserError("CCS alphabet must contain tau");
  for (const auto& a : alg.alphabet_) {
    if (a == "tau") continue;
    const std::string bar = ccs_complement(a);
    if (!alg.has_action(bar))
      throw UserError("CCS alphabet missing complement '" + bar + "' of '" + a + "'");
    const int i = alg.index_.at(a) + 2;
    const int j = alg.index_.at(bar) + 2;
    const int tau = alg.index_.at("tau") + 2;
    alg.cell(i, j) = tau;
    alg.cell(j, i) = tau;
  }
  return alg;
}

SyncAlgebra SyncAlgebra::tcsp(std::vector<std::string> alphabet) {
  check_alphabet(alphabet);
  SyncAlgebra alg;
  alg.alphabet_ = std::move(alphabet);
  for (std::size_t i = 0; i < alg.alphabet_.size(); ++i)
    alg.index_[alg.alphabet_[i]] = static_cast<int>(i);
  if (!alg.has_action("tau")) throw UserError("TCSP alphabet must contain tau");
  const int n = static_cast<int>(alg.n());
  const int tau = alg.index_.at("tau") + 2;
  alg.table_.assign(static_cast<std::size_t>(n) * n, 1);
  alg.cell(0, 0) = 0;
  alg.cell(tau, 0) = tau;  // only tau may run asynchronously
  alg.cell(0, tau) = tau;
  for (int k = 2; k < n; ++k) {
    if (k != tau) alg.cell(k, k) = k;  // a must synchronize with another a
  }
  return alg;
}

SyncAlgebra SyncAlgebra::from_entries(std::vector<std::string> alphabet,
                                      const std::vector<TableEntry>& entries) {
  check_alphabet(alphabet);
  SyncAlgebra alg;
  alg.alphabet_ = std::move(alphabet);
  for (std::size_t i = 0; i < alg.alphabet_.size(); ++i)
    alg.index_[alg.alphabet_[i]] = static_cast<int>(i);
  const int n = static_cast<int>(alg.n());
  alg.table_.assign(static_cast<std::size_t>(n) * n, -1);

  auto try_code = [&](const std::string& text) -> std::optional<int> {
    Label l = Label::from_string(text);
    if (l.is_idle()) return 0;
    if (l.is_bot()) return 1;
    auto it = alg.index_.find(l.name());
    if (it == alg.index_.end()) return std::nullopt;
    return it->second + 2;
  };

  for (const auto& e : entries) {
    auto cx = try_code(e.x), cy = try_code(e.y), cr = try_code(e.r);
    if (!cx || !cy || !cr) {
      alg.load_issues_.push_back(
          {"malformed-table", "entry (" + e.x + "," + e.y + ") -> " + e.r + " uses a label outside the alphabet"});
      continue;
    }
    // Canonical unordered key: store both mirror cells, flag conflicts.
    for (auto [i, j] : {std::pair{*cx, *cy}, std::pair{*cy, *cx}}) {
      int& c = alg.cell(i, j);
      if (c != -1 && c != *cr) {
        alg.load_issues_.push_back(
            {"commutativity", "conflicting entries for (" + e.x + "," + e.y + ")"});
      }
      c = *cr;
    }
  }

  // sync(a,0) must be explicit for alphabet actions; report gaps.
  for (int k = 2; k < n; ++k) {
    if (alg.cell(k, 0) == -1) {
      alg.load_issues_.push_back(
          {"malformed-table", "missing required entry (" + alg.alphabet_[k - 2] + ",0)"});
      alg.cell(k, 0) = 1;
      alg.cell(0, k) = 1;
    }
  }
  if (alg.cell(0, 0) == -1) alg.cell(0, 0) = 0;
  // Remaining gaps default to bot.
  for (auto& c : alg.table_)
    if (c == -1) c = 1;
  return alg;
}

ValidationReport SyncAlgebra::validate() const {
  ValidationReport rep;
  rep.violations = load_issues_;
  const int n = static_cast<int>(this->n());
  auto name = [&](int c) { return label_of_code(c).to_string(); };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cell(i, j) != cell(j, i))
        rep.violations.push_back({"commutativity", "sync(" + name(i) + "," + name(j) + ") != sync(" +
                                                       name(j) + "," + name(i) + ")"});
      // sync(a,b) = 0 iff a = b = 0
      const bool is_zero = cell(i, j) == 0;
      const bool both_idle = i == 0 && j == 0;
      if (is_zero != both_idle)
        rep.violations.push_back(
            {"idle", "sync(" + name(i) + "," + name(j) + ") = " + name(cell(i, j))});
    }
    // sync(a, bot) = bot for every a
    if (cell(i, 1) != 1)
      rep.violations.push_back({"bot-absorbing", "sync(" + name(i) + ",bot) = " + name(cell(i, 1))});
  }
  // sync(a,0) in {a, bot} for alphabet actions; sync(bot,0) = bot
  for (int k = 2; k < n; ++k) {
    const int r = cell(k, 0);
    if (r != k && r != 1)
      rep.violations.push_back({"async-or-bot", "sync(" + name(k) + ",0) = " + name(r)});
  }
  if (cell(1, 0) != 1)
    rep.violations.push_back({"bot-absorbing", "sync(bot,0) = " + name(cell(1, 0))});

  // Brute-force associativity over all triples; alphabets are small by contract.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int lhs = cell(cell(i, j), k);
        const int rhs = cell(i, cell(j, k));
        if (lhs != rhs)
          rep.violations.push_back({"associativity", "(" + name(i) + "," + name(j) + "," + name(k) +
                                                         "): " + name(lhs) + " != " + name(rhs)});
      }

  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace hda
