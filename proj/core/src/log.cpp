#include "fusionkit/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fusionkit {

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("FUSIONKIT_LOG");
        if (env == nullptr) return LogLevel::warn;
        if (std::strcmp(env, "error") == 0) return LogLevel::error;
        if (std::strcmp(env, "warn") == 0) return LogLevel::warn;
        if (std::strcmp(env, "info") == 0) return LogLevel::info;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log_message(LogLevel level, const std::string& message) {
    if (level > log_level()) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[fusionkit:%s] %s\n", names[int(level)], message.c_str());
}

}  // namespace fusionkit
