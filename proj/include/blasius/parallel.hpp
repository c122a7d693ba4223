#pragma once

#include <cstddef>
#include <functional>

namespace blasius {

/// Worker threads used for numeric loops. Read from BLASIUS_THREADS
/// (0 or unset means hardware concurrency).
std::size_t worker_count();

/// Runs task(0..count-1), possibly concurrently. Results must not depend on
/// scheduling; callers reduce in index order afterwards. The first exception
/// thrown by any task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

} // namespace blasius
