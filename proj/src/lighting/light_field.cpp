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

#include "lighting/light_field.hpp"

#include "core/error.hpp"

namespace ssdr::lighting {

void LightField::set_parameters(std::span<const double> values) {
    if (!values.empty()) throw ConfigError("light field has no parameters");
}

void LightField::accumulate_gradient(const Vec3&, const Vec3&, Sampler&, const Spectrum&,
                                     std::span<double>) const {}

}  // namespace ssdr::lighting
