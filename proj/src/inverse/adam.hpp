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

#include <span>
#include <vector>

namespace ssdr::inverse {

// First-order update with per-parameter moment estimates and bias correction.
class Adam {
public:
    struct Config {
        double beta1 = 0.9;
        double beta2 = 0.999;
        double eps = 1e-8;
    };

    explicit Adam(std::size_t n) : Adam(n, Config{}) {}
    Adam(std::size_t n, Config cfg) : cfg_(cfg), m_(n, 0.0), v_(n, 0.0) {}

    // params -= lr * m_hat / (sqrt(v_hat) + eps)
    void step(std::span<double> params, std::span<const double> grad, double lr);

    int steps() const { return t_; }

private:
    Config cfg_;
    std::vector<double> m_, v_;
    int t_ = 0;
};

}  // namespace ssdr::inverse
