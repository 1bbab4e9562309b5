#include "bq/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bq {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BQLAB_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
            // fall through to the serial default on unparsable values
        }
    }
    return 1;
}

}  // namespace bq
