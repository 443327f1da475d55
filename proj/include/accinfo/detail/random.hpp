#pragma once

#include <random>

namespace accinfo {

template <class Rng>
Vec3 random_bloch_ball(Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Vec3 r{u(rng), u(rng), u(rng)};
        if (dot(r, r) <= 1.0) return r;
    }
}

}  // namespace accinfo
