#include "bezout/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace bezout::log {

namespace {

Level g_level = [] {
    const char* env = std::getenv("BEZOUT_LOG");
    if (!env) return Level::info;
    std::string v(env);
    if (v == "quiet") return Level::quiet;
    if (v == "debug") return Level::debug;
    return Level::info;
}();

std::mutex g_mutex;

void emit(const char* tag, const std::string& msg) {
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << tag << msg << '\n';
}

}  // namespace

Level level() { return g_level; }
void setLevel(Level l) { g_level = l; }

void info(const std::string& msg) {
    if (g_level >= Level::info) emit("[bezout] ", msg);
}

void debug(const std::string& msg) {
    if (g_level >= Level::debug) emit("[bezout:debug] ", msg);
}

}  // namespace bezout::log
