#pragma once

#include "stratlog/formula.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stratlog
{

class parse_error : public std::runtime_error
{
public:
    parse_error( const std::string& message, std::size_t position );
    // Error on line `line` of a definitions file; position is within that line.
    parse_error( const std::string& message, std::size_t position, std::size_t line );

    [[nodiscard]] std::size_t position() const { return _position; }
    [[nodiscard]] std::size_t line() const { return _line; } // 0 outside definitions files
    [[nodiscard]] const std::string& detail() const { return _detail; }

private:
    std::size_t _position;
    std::size_t _line = 0;
    std::string _detail;
};

// Named formulas and rules. Names are expanded as macros when parsing; a name
// bound to a PD/PC rule may only appear in rule position.
class Definitions
{
public:
    // Throws std::invalid_argument on redefinition.
    void define( const std::string& name, Rule rule );
    [[nodiscard]] const Rule* find( std::string_view name ) const;
    [[nodiscard]] std::size_t size() const { return _table.size(); }
    [[nodiscard]] const std::map< std::string, Rule, std::less<> >& table() const { return _table; }

private:
    std::map< std::string, Rule, std::less<> > _table;
};

// Grammar, loosest first:
//   iff   := imp ('<->' imp)*         left-associative
//   imp   := or ('->' imp)?            right-associative
//   or    := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := '~' unary | 'X' unary | '(' iff ')' | atom | name
//   atom  := does(t) | legal(t) | wins(t) | init | terminal | true | false | ident['(' t, ... ')']
//   rule  := 'PD' '[' rule, ... ']' | 'PC' '[' rule, ... ']' | name | iff
[[nodiscard]] Formula parse_formula( std::string_view text, const Definitions* env = nullptr );
[[nodiscard]] Rule parse_rule( std::string_view text, const Definitions* env = nullptr );

// One `name := rule-or-formula` per line; blank lines and lines starting with
// '#' or '%' are skipped. Later lines may use earlier names.
void load_definitions( std::istream& in, Definitions& into );
void load_definitions_file( const std::filesystem::path& path, Definitions& into );

} // namespace stratlog
