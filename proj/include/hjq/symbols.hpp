#pragma once

#include "hjq/errors.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hjq {

enum class SymbolKind {
    Coordinate,
    Velocity,
    Momentum,
    ParameterTime,
    Constant,
    // Identifier seen during permissive parsing that no declaration covers.
    // validate_model turns these into error findings.
    Undeclared,
};

using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = std::numeric_limits<SymbolId>::max();

struct Symbol {
    std::string name;
    SymbolKind kind = SymbolKind::Undeclared;
    // Velocity -> its coordinate; momentum -> its coordinate or parameter time.
    SymbolId link = kNoSymbol;
};

// Per-model symbol table. Creation order doubles as the significance order of
// the graded-lexicographic monomial order, so insertion order is part of the
// observable behaviour and must stay deterministic. Frozen after model load.
class SymbolTable {
public:
    SymbolId add(std::string name, SymbolKind kind, SymbolId link = kNoSymbol) {
        if (frozen_) throw Error("symbol table is frozen");
        if (by_name_.count(name))
            throw Error("duplicate symbol name '" + name + "'");
        SymbolId id = static_cast<SymbolId>(symbols_.size());
        by_name_.emplace(name, id);
        symbols_.push_back(Symbol{std::move(name), kind, link});
        return id;
    }

    std::optional<SymbolId> find(std::string_view name) const {
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
    const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
    SymbolKind kind(SymbolId id) const { return symbols_.at(id).kind; }
    std::size_t size() const { return symbols_.size(); }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::vector<SymbolId> of_kind(SymbolKind k) const {
        std::vector<SymbolId> out;
        for (SymbolId i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].kind == k) out.push_back(i);
        return out;
    }

    // The velocity/momentum attached to a coordinate, if registered.
    std::optional<SymbolId> linked(SymbolKind k, SymbolId target) const {
        for (SymbolId i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].kind == k && symbols_[i].link == target) return i;
        return std::nullopt;
    }

private:
    std::vector<Symbol> symbols_;
    std::map<std::string, SymbolId> by_name_;
    bool frozen_ = false;
};

} // namespace hjq
