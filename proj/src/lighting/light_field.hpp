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

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "core/sampler.hpp"
#include "core/spectrum.hpp"
#include "core/vec.hpp"

namespace ssdr::lighting {

struct LightQuery {
    Spectrum radiance;
    double confidence = 1.0;  // 1 for exact fields; 1 - u for the learned field
};

// Incident radiance L_i(p, d), with d pointing from p toward the source.
// Implementations are immutable during rendering; `rng` feeds any stochastic
// estimator behind the query (e.g. stratified volume rendering) and must be
// the same stream in a forward pass and its matching backward pass.
class LightField {
public:
    virtual ~LightField() = default;

    virtual LightQuery query(const Vec3& p, const Vec3& d, Sampler& rng) const = 0;

    // Differentiable parameters, empty for fixed fields.
    virtual std::size_t parameter_count() const { return 0; }
    virtual std::vector<double> parameters() const { return {}; }
    virtual void set_parameters(std::span<const double> values);

    // Adds adjoint . dL/dtheta to grad (size parameter_count()).
    virtual void accumulate_gradient(const Vec3& p, const Vec3& d, Sampler& rng, const Spectrum& adjoint,
                                     std::span<double> grad) const;

    // Valid range for parameter i after an optimizer step.
    virtual double project_parameter(std::size_t /*i*/, double value) const { return value; }

    virtual std::unique_ptr<LightField> clone() const = 0;
};

}  // namespace ssdr::lighting
