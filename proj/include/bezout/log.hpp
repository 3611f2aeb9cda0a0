//
// log.hpp
//
// Minimal stderr logger controlled by the BEZOUT_LOG environment variable
// (quiet | info | debug, default info).
//

#pragma once

#include <string>

namespace bezout::log {

enum class Level { quiet = 0, info = 1, debug = 2 };

Level level();
void setLevel(Level l);

void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace bezout::log
