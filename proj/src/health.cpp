#include "hqgrass/health.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace hqgrass::health {

namespace {
std::atomic<std::uint64_t> g_count{0};
std::mutex g_mutex;
Handler g_handler;  // guarded by g_mutex
}  // namespace

void warn(const std::string& message) {
    g_count.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_handler) {
        g_handler(message);
    } else {
        std::cerr << "[numerical-health] " << message << "\n";
    }
}

std::uint64_t warning_count() { return g_count.load(std::memory_order_relaxed); }

void reset_warning_count() { g_count.store(0, std::memory_order_relaxed); }

void set_handler(Handler handler) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_handler = std::move(handler);
}

}  // namespace hqgrass::health
