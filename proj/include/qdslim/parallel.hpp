#ifndef QDSLIM_PARALLEL_HPP
#define QDSLIM_PARALLEL_HPP

#include <functional>

namespace qdslim {

// Thread cap: QDSLIM_THREADS if set, otherwise the hardware count.
int max_threads();

// Runs fn(i) for i in [0, n). Work items must be independent; callers keep
// determinism by writing only to slot i and reducing in index order after.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace qdslim

#endif
