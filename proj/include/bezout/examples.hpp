//
// examples.hpp
//
// Built-in example symbols used by docs, tests and the `example` subcommand.
//

#pragma once

#include <string>
#include <vector>

#include "bezout/series.hpp"

namespace bezout {

/// name in {constant, polynomial_1x2, square_identity}; throws UnknownExample.
CoeffSeries builtinExample(const std::string& name);

std::vector<std::string> builtinExampleNames();

}  // namespace bezout
