#ifndef GFC_LOG_HPP
#define GFC_LOG_HPP

#include <string>

namespace gfc::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from the GFC_LOG environment variable
// (error|warn|info|debug); default is warn.
Level threshold();

void emit(Level lvl, const std::string& msg);

inline void error(const std::string& msg) { emit(Level::error, msg); }
inline void warn(const std::string& msg) { emit(Level::warn, msg); }
inline void info(const std::string& msg) { emit(Level::info, msg); }
inline void debug(const std::string& msg) { emit(Level::debug, msg); }

}  // namespace gfc::log

#endif
