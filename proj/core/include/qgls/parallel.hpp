#pragma once

#include <cstddef>
#include <functional>

namespace qgls {

/// Worker cap: min(hardware threads, QGLS_THREADS when set).
std::size_t worker_count();

/// Runs body(0..n-1) across workers; results must be written by index so
/// that the outcome is deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qgls
