// SPDX-License-Identifier: Apache-2.0
//
// xlmimo: near-field XL-MIMO channel modelling, analysis and detection
// Copyright (C) 2026 The xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef XLMIMO_RANDOM_HPP
#define XLMIMO_RANDOM_HPP

#include <cstdint>
#include <random>

namespace xlmimo
{
    // Portable, bit-reproducible random source.
    //
    // The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard.
    // The standard distributions are implementation-defined, so uniforms are formed
    // here from the top 53 bits of each draw: u = (x >> 11) * 2^-53, u in [0, 1).
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
        std::uint64_t next() { return engine_(); }

    private:
        std::mt19937_64 engine_;
    };

    // SplitMix64 finaliser.
    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Counter-based stream splitting: stream i of master seed s is seeded with
    // splitmix64(s ^ splitmix64(i)). Independent of evaluation order.
    constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter)
    {
        return splitmix64(master ^ splitmix64(counter));
    }
}

#endif
