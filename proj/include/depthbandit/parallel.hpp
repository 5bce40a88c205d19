#pragma once

namespace depthbandit {

/// Worker cap for OpenMP kernels. 0 means "use the OpenMP default".
/// Initialized from DEPTHBANDIT_THREADS on first use; can be overridden
/// programmatically. All kernels produce identical results for any cap.
int worker_cap();
void set_worker_cap(int cap);

/// Number of threads a kernel should spawn right now.
int resolve_workers();

} // namespace depthbandit
