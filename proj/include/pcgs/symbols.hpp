#ifndef PCGS_SYMBOLS_HPP
#define PCGS_SYMBOLS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcgs {

using SymbolId = std::uint32_t;
using Word = std::vector<SymbolId>;

enum class SymbolKind : std::uint8_t { kNonterminal, kTerminal, kQuery };

// Interned symbol storage. Names resolve to dense ids so configurations can
// be hashed and compared without touching strings. A name may be registered
// under two different kinds; that is deliberately representable so that
// validate() can report the disjointness violation instead of the table
// aborting on malformed input.
class SymbolTable {
 public:
  SymbolId add_nonterminal(std::string_view name) { return add(name, SymbolKind::kNonterminal); }
  SymbolId add_terminal(std::string_view name) { return add(name, SymbolKind::kTerminal); }

  // Creates the query symbols Q1..Qn, one per component. May only be set once.
  void set_component_count(std::uint32_t n);

  std::optional<SymbolId> find(std::string_view name) const;

  SymbolKind kind(SymbolId id) const { return kinds_[id]; }
  const std::string& name(SymbolId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

  bool is_nonterminal(SymbolId id) const { return kinds_[id] == SymbolKind::kNonterminal; }
  bool is_terminal(SymbolId id) const { return kinds_[id] == SymbolKind::kTerminal; }
  bool is_query(SymbolId id) const { return kinds_[id] == SymbolKind::kQuery; }

  // Component targeted by a query symbol (0-based).
  std::uint32_t query_component(SymbolId id) const { return query_component_[id]; }
  SymbolId query_symbol(std::uint32_t component) const { return query_ids_.at(component); }
  std::uint32_t query_count() const { return static_cast<std::uint32_t>(query_ids_.size()); }

  std::size_t nonterminal_count() const { return counts_[0]; }
  std::size_t terminal_count() const { return counts_[1]; }

  bool operator==(const SymbolTable& o) const {
    return names_ == o.names_ && kinds_ == o.kinds_ && query_ids_ == o.query_ids_;
  }

 private:
  SymbolId add(std::string_view name, SymbolKind kind);

  std::vector<std::string> names_;
  std::vector<SymbolKind> kinds_;
  std::vector<std::uint32_t> query_component_;
  std::vector<SymbolId> query_ids_;
  std::unordered_map<std::string, SymbolId> index_;  // first registration wins
  std::size_t counts_[2] = {0, 0};
};

}  // namespace pcgs

#endif
