#include "secsym/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace secsym {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
}

Vec Rng::uniform_vec(Index n, double a, double b) {
    Vec out(n);
    for (Index i = 0; i < n; ++i) out[i] = uniform(a, b);
    return out;
}

Vec Rng::gaussian_vec(Index n) {
    Vec out(n);
    for (Index i = 0; i < n; ++i) out[i] = gaussian();
    return out;
}

} // namespace secsym
