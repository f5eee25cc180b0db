#include "quantacurve/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace quantacurve {

int apply_thread_cap_from_env() {
    if (const char* env = std::getenv("QUANTACURVE_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) {
                omp_set_num_threads(std::min(cap, omp_get_num_procs()));
            }
        } catch (const std::exception&) {
            // Unparsable values leave the default in place.
        }
    }
    return omp_get_max_threads();
}

} // namespace quantacurve
