#include "sgspec/parallel.hpp"

#include <atomic>

namespace sgspec {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) noexcept { g_threads = n == 0 ? 1 : n; }
unsigned thread_count() noexcept { return g_threads; }

}  // namespace sgspec
