#include "rdpso/error.hpp"

#include <atomic>
#include <cstdio>

namespace rdpso {
namespace {

void stderr_handler(const char* message) { std::fprintf(stderr, "warning: %s\n", message); }

std::atomic<WarningHandler> g_handler{&stderr_handler};

}  // namespace

void set_warning_handler(WarningHandler handler) {
  g_handler.store(handler ? handler : &stderr_handler);
}

void warn(const std::string& message) { g_handler.load()(message.c_str()); }

}  // namespace rdpso
