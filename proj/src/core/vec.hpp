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
#include <type_traits>

namespace ssdr {

// Small 3-vector; T is double or a forward-mode Dual.
template <typename T>
struct Vec3T {
    T x{}, y{}, z{};

    constexpr Vec3T() = default;
    constexpr Vec3T(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

    template <typename U>
    static Vec3T from(const Vec3T<U>& o) {
        return {T(o.x), T(o.y), T(o.z)};
    }

    Vec3T operator-() const { return {-x, -y, -z}; }
    Vec3T& operator+=(const Vec3T& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

using Vec3 = Vec3T<double>;

template <typename T>
Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
template <typename T>
Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
template <typename T, typename S>
Vec3T<T> operator*(const Vec3T<T>& a, const S& s) {
    return {a.x * s, a.y * s, a.z * s};
}
template <typename T, typename S>
Vec3T<T> operator*(const S& s, const Vec3T<T>& a) {
    return {a.x * s, a.y * s, a.z * s};
}
template <typename T, typename S>
Vec3T<T> operator/(const Vec3T<T>& a, const S& s) {
    return {a.x / s, a.y / s, a.z / s};
}

template <typename T>
T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Mixed dot for a Dual-valued vector against a constant one.
template <typename T>
T dot(const Vec3T<T>& a, const Vec3& b)
    requires(!std::is_same_v<T, double>)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
T length(const Vec3T<T>& a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}

template <typename T>
Vec3T<T> normalize(const Vec3T<T>& a) {
    return a / length(a);
}

inline bool is_finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Reflection of d about the plane with unit normal n.
template <typename T>
Vec3T<T> mirror(const Vec3& d, const Vec3T<T>& n) {
    T dn = dot(n, d);
    return Vec3T<T>::from(d) - n * (dn * 2.0);
}

// Orthonormal basis around a unit normal (Duff et al. 2017).
struct Frame {
    Vec3 s, t, n;

    explicit Frame(const Vec3& normal) : n(normal) {
        double sign = std::copysign(1.0, n.z);
        double a = -1.0 / (sign + n.z);
        double b = n.x * n.y * a;
        s = {1.0 + sign * n.x * n.x * a, sign * b, -sign * n.x};
        t = {b, sign + n.y * n.y * a, -n.y};
    }

    Vec3 to_world(const Vec3& l) const { return s * l.x + t * l.y + n * l.z; }
    Vec3 to_local(const Vec3& w) const { return {dot(w, s), dot(w, t), dot(w, n)}; }
};

}  // namespace ssdr
