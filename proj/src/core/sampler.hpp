// ----------------------------------------------------------------------------
// Copyright 2026 The ssdr Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ----------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>

namespace ssdr {

// Counter-based random stream keyed by (seed, pixel, sample, stream). Every
// draw hashes the key with a running counter, so a stream depends only on its
// key and never on scheduling.
class Sampler {
public:
    Sampler(std::uint64_t seed, std::uint64_t pixel, std::uint64_t sample, std::uint64_t stream = 0)
        : key_(mix(mix(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ pixel) ^ (sample * 0xd1b54a32d192ed03ull)) ^
               (stream * 0x94d049bb133111ebull)) {}

    // Uniform double in [0, 1).
    double next1d() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::array<double, 2> next2d() {
        double a = next1d();
        return {a, next1d()};
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    // Independent child stream, e.g. for the lighting query of a sample.
    Sampler substream(std::uint64_t stream) const {
        Sampler s(*this);
        s.key_ = mix(key_ ^ (stream + 1) * 0xbf58476d1ce4e5b9ull);
        s.counter_ = 0;
        return s;
    }

    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace ssdr
