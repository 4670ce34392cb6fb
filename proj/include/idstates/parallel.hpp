#pragma once

namespace idstates {

/// Caps OpenMP worker count; 0 restores the runtime default.
void set_thread_limit(int threads);

/// Reads IDSTATES_THREADS (0 or unset = auto) and applies it.
void apply_thread_limit_from_env();

int max_threads();

}  // namespace idstates
