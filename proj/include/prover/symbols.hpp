#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace prover {

using SymbolId = uint32_t;

enum class SymbolKind : uint8_t { Function, Predicate };

struct Symbol {
  std::string name;
  uint32_t arity = 0;
  SymbolKind kind = SymbolKind::Function;
};

/// Interning table for function and predicate symbols. (name, kind) is the
/// identity; arity is fixed at first sight and checked on every later use.
/// Variables are not interned here -- they are plain integer ids scoped to
/// a clause or a search.
class SymbolTable {
public:
  SymbolId intern(const std::string& name, uint32_t arity, SymbolKind kind) {
    auto key = make_key(name, kind);
    auto it = index_.find(key);
    if (it != index_.end()) {
      const Symbol& existing = symbols_[it->second];
      if (existing.arity != arity) {
        throw std::runtime_error("inconsistent arity for symbol '" + name +
                                 "': " + std::to_string(existing.arity) +
                                 " vs " + std::to_string(arity));
      }
      return it->second;
    }
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{name, arity, kind});
    index_.emplace(std::move(key), id);
    return id;
  }

  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
  uint32_t arity(SymbolId id) const { return symbols_.at(id).arity; }
  size_t size() const { return symbols_.size(); }

private:
  static std::string make_key(const std::string& name, SymbolKind kind) {
    return (kind == SymbolKind::Predicate ? "P:" : "F:") + name;
  }

  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

}  // namespace prover
