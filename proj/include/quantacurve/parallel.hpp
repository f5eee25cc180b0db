#pragma once

namespace quantacurve {

// Applies the QUANTACURVE_THREADS cap, if set; returns the resulting
// maximum thread count.
int apply_thread_cap_from_env();

} // namespace quantacurve
