#include "cmaj/parallel.hpp"

namespace cmaj {
namespace {

std::atomic<unsigned> g_workers{1};

}  // namespace

void set_worker_count(unsigned workers) { g_workers = workers == 0 ? 1 : workers; }

unsigned worker_count() { return g_workers; }

}  // namespace cmaj
