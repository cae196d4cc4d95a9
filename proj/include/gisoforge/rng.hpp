#ifndef GISOFORGE_RNG_HPP
#define GISOFORGE_RNG_HPP

#include <cstdint>
#include <vector>

namespace gisoforge {

// Deterministic splitmix64 generator.  The standard library distributions
// are implementation-defined, so all bounded sampling is done here to keep
// outputs byte-for-byte reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    int bit() { return static_cast<int>(next() >> 63); }

    // Independent child stream, e.g. one per Monte Carlo trial.
    Rng spawn(std::uint64_t index) const {
        Rng child(state_ ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
        child.next();
        return child;
    }

    template <typename T>
    void shuffle(std::vector<T> &v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace gisoforge

#endif // GISOFORGE_RNG_HPP
