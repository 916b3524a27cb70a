#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <vector>

namespace ramseyforge {

// Worker cap for internal parallel loops. Initialized from the
// RAMSEYFORGE_WORKERS environment variable on first use; defaults to the
// hardware concurrency (at most 8).
int worker_count();
void set_worker_count(int workers);

// Parses a RAMSEYFORGE_WORKERS value; nullopt unless a positive integer.
std::optional<int> parse_worker_count(const char* text);

// Runs body(i) for i in [0, count). Exceptions are rethrown for the lowest
// failing index, so behaviour does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Calls probe(i) in parallel and returns the lowest index for which it
// returned true, or nullopt.
std::optional<std::size_t> parallel_find_first(std::size_t count,
                                               const std::function<bool(std::size_t)>& probe);

}  // namespace ramseyforge
