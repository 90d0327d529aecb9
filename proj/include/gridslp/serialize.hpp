#pragma once

#include <string>
#include <string_view>

#include "gridslp/grammar.hpp"

namespace gridslp {

/// Parses the line-based SLP2D v1 / TSLP2D v1 text format.
///
/// Symbol ids follow the order of definition lines; names referenced but never
/// defined are appended as Op::Undefined so validate() can report them.
/// Throws ParseError on malformed lines.
Grammar parse_grammar(std::string_view text);

/// Emits the text format. Undefined symbols are skipped.
std::string emit_grammar(const Grammar& g);

Grammar read_grammar_file(const std::string& path);
void write_grammar_file(const Grammar& g, const std::string& path);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace gridslp
