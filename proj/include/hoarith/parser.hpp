#ifndef HOARITH_PARSER_HPP
#define HOARITH_PARSER_HPP

#include "hoarith/syntax.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoarith {

struct ParseError : std::runtime_error {
    int line;
    int column;
    std::string expected;
    ParseError(const std::string& msg, int line_, int col_, std::string expected_)
        : std::runtime_error(msg), line(line_), column(col_), expected(std::move(expected_)) {}
};

// Maps surface names to variables. Identifiers of the form x<k> denote the
// variable with index k directly; other identifiers are interned to unused
// indices in first-occurrence order.
class NameTable {
public:
    Var intern(const std::string& name);
    void reserve_index(std::uint32_t idx) { used_.insert(idx); }
    std::string name_of(Var v) const;
    const std::map<std::string, Var>& names() const { return by_name_; }

private:
    std::map<std::string, Var> by_name_;
    std::map<Var, std::string> by_var_;
    std::set<std::uint32_t> used_;
};

// Parse a while-program / formula. When names is supplied, bare identifiers
// are interned through it and the mapping is left there for the caller.
StmtPtr parse_program(std::string_view text, NameTable* names = nullptr);
FormulaPtr parse_formula(std::string_view text, NameTable* names = nullptr);

// Guard-level parse (quantifier-free), used by the derivation file reader.
BExprPtr parse_bexpr(std::string_view text, NameTable* names = nullptr);

// Arithmetic term on its own.
ExprPtr parse_expr(std::string_view text, NameTable* names = nullptr);

} // namespace hoarith

#endif
