#pragma once

#include <string>

#include "hml/symbol.hpp"

namespace hml {

/// Parses the symbol mini-language:
///
///   identity | bump | divergent | heat{t=T} | oscillatory{k=K}
///   laplace_type{phi=const} | laplace_type{phi=imag_power:gamma=G}
///   potential{s=S,h=cos|sign|gauss} | csv:path
///
/// Whitespace around names, keys and values is ignored.  Throws
/// std::invalid_argument with a message naming the offending part.
Symbol parse_symbol(const std::string& text, std::size_t dims);

}  // namespace hml
