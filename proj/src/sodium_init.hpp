#pragma once

#include <sodium.h>

#include <stdexcept>

namespace dccse::detail {

inline void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) {
        throw std::runtime_error("sodium_init failed");
    }
}

}  // namespace dccse::detail
