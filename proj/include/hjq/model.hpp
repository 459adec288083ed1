#pragma once

#include "hjq/expr.hpp"
#include "hjq/symbols.hpp"

#include <string>
#include <vector>

namespace hjq {

// Raw model as declared in a .hjm file or a builtin record.
struct ModelDefinition {
    std::string name;
    std::vector<std::string> coordinates;
    std::vector<std::string> constants;
    std::string lagrangian_text;
};

// Model with its symbol universe registered and the Lagrangian parsed.
// Registration order per coordinate is (q, dq, p_q), then constants, then
// tau and p_0: this order fixes the monomial significance used everywhere.
struct BoundModel {
    ModelDefinition definition;
    SymbolTable table;
    std::vector<SymbolId> coordinates;
    std::vector<SymbolId> velocities;
    std::vector<SymbolId> momenta;
    std::vector<SymbolId> constants;
    SymbolId tau = kNoSymbol;
    SymbolId p0 = kNoSymbol;
    ExprPtr lagrangian;

    std::size_t dimension() const { return coordinates.size(); }
};

// Registers symbols and parses the Lagrangian permissively, so undeclared
// identifiers survive as Undeclared symbols for validation to report.
// Throws ModelFormatError on empty coordinate lists, reserved or colliding
// names, and on Lagrangian syntax errors.
BoundModel bind_model(const ModelDefinition& def);

// Parses the .hjm model file format:
//   model <name> { coords: <ids>; consts: <ids>; lagrangian: "<expr>"; }
// with '#' line comments; the consts clause is optional.
ModelDefinition parse_model_text(const std::string& text);
ModelDefinition load_model_file(const std::string& path);

} // namespace hjq
