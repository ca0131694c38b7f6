#ifndef HOARITH_PRINTER_HPP
#define HOARITH_PRINTER_HPP

#include "hoarith/parser.hpp"
#include "hoarith/syntax.hpp"

#include <string>

namespace hoarith {

// Surface syntax; parse(to_text(a)) is structurally equal to a.
std::string to_text(const ExprPtr& e, const NameTable* names = nullptr);
std::string to_text(const BExprPtr& b, const NameTable* names = nullptr);
std::string to_text(const FormulaPtr& f, const NameTable* names = nullptr);
std::string to_text(const StmtPtr& s, const NameTable* names = nullptr);

std::string to_sexpr(const ExprPtr& e, const NameTable* names = nullptr);
std::string to_sexpr(const FormulaPtr& f, const NameTable* names = nullptr);
std::string to_sexpr(const StmtPtr& s, const NameTable* names = nullptr);

// Tagged-union JSON export.
std::string to_json(const ExprPtr& e, const NameTable* names = nullptr);
std::string to_json(const FormulaPtr& f, const NameTable* names = nullptr);
std::string to_json(const StmtPtr& s, const NameTable* names = nullptr);

// SMT-LIB v2 script asserting the formula; naturals are encoded as
// integers with nonnegativity guards on every declared or bound variable.
std::string formula_to_smt2(const FormulaPtr& f, const NameTable* names = nullptr);

// Just the term for embedding in a larger script.
std::string formula_to_smt2_term(const FormulaPtr& f, const NameTable* names = nullptr);

} // namespace hoarith

#endif
