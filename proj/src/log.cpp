#include "gfc/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace gfc::log {

Level threshold() {
  static Level lvl = [] {
    const char* env = std::getenv("GFC_LOG");
    if (!env) return Level::warn;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "warn") == 0) return Level::warn;
    if (std::strcmp(env, "info") == 0) return Level::info;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::warn;
  }();
  return lvl;
}

void emit(Level lvl, const std::string& msg) {
  if (lvl > threshold()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[gfc:%s] %s\n", names[static_cast<int>(lvl)], msg.c_str());
}

}  // namespace gfc::log
