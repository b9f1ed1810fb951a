#ifndef HDA_SYNC_ALGEBRA_HPP
#define HDA_SYNC_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hda {

// A label is either an action name from the alphabet, the idle element 0,
// or the no-sync element bot. "0" and "bot" are reserved spellings.
class Label {
 public:
  static Label idle() { return Label(Tag::Idle, {}); }
  static Label bot() { return Label(Tag::Bot, {}); }
  static Label action(std::string name) { return Label(Tag::Action, std::move(name)); }
  static Label from_string(const std::string& text);

  bool is_idle() const { return tag_ == Tag::Idle; }
  bool is_bot() const { return tag_ == Tag::Bot; }
  bool is_action() const { return tag_ == Tag::Action; }
  const std::string& name() const { return name_; }
  std::string to_string() const;

  bool operator==(const Label& o) const { return tag_ == o.tag_ && name_ == o.name_; }
  bool operator!=(const Label& o) const { return !(*this == o); }
  // Fixed total order used to canonicalize unordered pair keys: 0 < bot < actions.
  bool operator<(const Label& o) const {
    if (tag_ != o.tag_) return tag_ < o.tag_;
    return name_ < o.name_;
  }

 private:
  enum class Tag { Idle = 0, Bot = 1, Action = 2 };
  Label(Tag tag, std::string name) : tag_(tag), name_(std::move(name)) {}
  Tag tag_;
  std::string name_;
};

struct AxiomViolation {
  std::string axiom;    // commutativity, associativity, bot-absorbing, idle, async-or-bot, malformed-table
  std::string witness;  // human-readable tuple
};

struct ValidationReport {
  bool ok = true;
  std::vector<AxiomViolation> violations;
  std::string to_string() const;
};

struct TableEntry {
  std::string x, y, r;  // label spellings; "0" = idle, "bot" = bot
};

// Finite synchronization algebra on alphabet ∪ {0, bot}. The table is dense
// and total; construction from explicit entries records conflicts and gaps
// for validate() instead of failing fast.
class SyncAlgebra {
 public:
  static constexpr std::size_t kMaxAlphabet = 64;

  static SyncAlgebra trivial(std::vector<std::string> alphabet);
  static SyncAlgebra ccs(std::vector<std::string> alphabet);
  static SyncAlgebra tcsp(std::vector<std::string> alphabet);
  // Explicit table. Omitted pairs default to bot, except sync(a, 0) for a in
  // the alphabet which must be given; sync(0,0)=0 and bot-absorption are filled in.
  static SyncAlgebra from_entries(std::vector<std::string> alphabet,
                                  const std::vector<TableEntry>& entries);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  bool has_action(const std::string& name) const { return index_.count(name) != 0; }
  // Position in the declared alphabet order (trace-monoid letter order).
  int action_index(const std::string& name) const;

  Label sync(const Label& x, const Label& y) const;
  Label sync_actions(const std::string& a, const std::string& b) const;
  bool asynchronous(const std::string& action) const;

  ValidationReport validate() const;

  // CCS complement spelling: "a" <-> "coa"; "tau" has no complement.
  static std::string ccs_complement(const std::string& name);

 private:
  SyncAlgebra() = default;
  int code(const Label& l) const;
  Label label_of_code(int c) const;
  int& cell(int i, int j) { return table_[static_cast<std::size_t>(i) * n() + j]; }
  int cell(int i, int j) const { return table_[static_cast<std::size_t>(i) * n() + j]; }
  std::size_t n() const { return alphabet_.size() + 2; }  // codes: 0 = idle, 1 = bot, k+2 = action k

  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> table_;
  std::vector<AxiomViolation> load_issues_;
};

}  // namespace hda

#endif
