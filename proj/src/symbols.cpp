#include "pcgs/symbols.hpp"

#include <stdexcept>

namespace pcgs {

SymbolId SymbolTable::add(std::string_view name, SymbolKind kind) {
  std::string key(name);
  auto it = index_.find(key);
  if (it != index_.end()) {
    SymbolId existing = it->second;
    if (kinds_[existing] == kind) return existing;
    // Same name under another kind: look for an exact-kind entry further on.
    for (SymbolId id = existing + 1; id < names_.size(); ++id) {
      if (names_[id] == key && kinds_[id] == kind) return id;
    }
  }
  SymbolId id = static_cast<SymbolId>(names_.size());
  names_.push_back(key);
  kinds_.push_back(kind);
  query_component_.push_back(0);
  if (it == index_.end()) index_.emplace(std::move(key), id);
  if (kind == SymbolKind::kNonterminal) ++counts_[0];
  if (kind == SymbolKind::kTerminal) ++counts_[1];
  return id;
}

void SymbolTable::set_component_count(std::uint32_t n) {
  if (!query_ids_.empty()) throw std::logic_error("component count already set");
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string name = "Q" + std::to_string(i + 1);
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.push_back(name);
    kinds_.push_back(SymbolKind::kQuery);
    query_component_.push_back(i);
    query_ids_.push_back(id);
    index_.emplace(std::move(name), id);
  }
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace pcgs
