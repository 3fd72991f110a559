#pragma once

namespace certreg {

/// Number of threads OpenMP will use for parallel kernels (1 when built
/// without OpenMP).
int max_threads();

/// Applies the CERTREG_THREADS environment override, if set.
void configure_threads_from_env();

}  // namespace certreg
