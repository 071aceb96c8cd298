#include "landau/errors.hpp"

#include <iostream>
#include <mutex>
#include <set>

namespace landau {
namespace {
std::mutex g_mutex;
std::vector<std::string> g_warnings;
bool g_muted = false;
// Categories (text before the first ':') already echoed.
std::set<std::string> g_echoed;
}  // namespace

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_warnings.push_back(message);
  if (g_muted) return;
  const std::string category = message.substr(0, message.find(':'));
  if (g_echoed.insert(category).second) {
    std::cerr << "warning: " << message << "\n";
  }
}

std::vector<std::string> warnings() {
  std::lock_guard<std::mutex> lock(g_mutex);
  return g_warnings;
}

void clear_warnings() {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_warnings.clear();
  g_echoed.clear();
}

bool set_warnings_muted(bool muted) {
  std::lock_guard<std::mutex> lock(g_mutex);
  const bool previous = g_muted;
  g_muted = muted;
  return previous;
}

}  // namespace landau
