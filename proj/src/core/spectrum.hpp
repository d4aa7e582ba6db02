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

#include <cmath>

namespace ssdr {

// Linear RGB triple. Spectrum (double) holds radiance or reflectance.
template <typename T>
struct RgbT {
    T r{}, g{}, b{};

    constexpr RgbT() = default;
    constexpr RgbT(T r_, T g_, T b_) : r(r_), g(g_), b(b_) {}
    constexpr explicit RgbT(T v) : r(v), g(v), b(v) {}

    T& operator[](int i) { return i == 0 ? r : (i == 1 ? g : b); }
    const T& operator[](int i) const { return i == 0 ? r : (i == 1 ? g : b); }

    RgbT& operator+=(const RgbT& o) {
        r += o.r;
        g += o.g;
        b += o.b;
        return *this;
    }
};

using Spectrum = RgbT<double>;

template <typename T>
RgbT<T> operator+(const RgbT<T>& a, const RgbT<T>& b) {
    return {a.r + b.r, a.g + b.g, a.b + b.b};
}
template <typename T>
RgbT<T> operator-(const RgbT<T>& a, const RgbT<T>& b) {
    return {a.r - b.r, a.g - b.g, a.b - b.b};
}
template <typename T>
RgbT<T> operator*(const RgbT<T>& a, const RgbT<T>& b) {
    return {a.r * b.r, a.g * b.g, a.b * b.b};
}
template <typename T, typename S>
RgbT<T> operator*(const RgbT<T>& a, const S& s) {
    return {a.r * s, a.g * s, a.b * s};
}
template <typename T, typename S>
RgbT<T> operator*(const S& s, const RgbT<T>& a) {
    return {a.r * s, a.g * s, a.b * s};
}
template <typename T, typename S>
RgbT<T> operator/(const RgbT<T>& a, const S& s) {
    return {a.r / s, a.g / s, a.b / s};
}

// Rec. 709 luminance weights.
template <typename T>
T luminance(const RgbT<T>& c) {
    return c.r * 0.2126 + c.g * 0.7152 + c.b * 0.0722;
}

inline bool is_finite(const Spectrum& s) {
    return std::isfinite(s.r) && std::isfinite(s.g) && std::isfinite(s.b);
}

inline bool is_black(const Spectrum& s) { return s.r == 0.0 && s.g == 0.0 && s.b == 0.0; }

}  // namespace ssdr
