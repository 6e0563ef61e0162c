// Copyright 2026 The bscert Authors
//
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

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "bscert/distinguishability.hpp"
#include "bscert/photonic/probability.hpp"

namespace bscert {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct BosonModel {};
struct ClassicalModel {};
/// One phase vector per run, shared by all photons of that run.
struct MeanFieldSharedModel {};
/// A fresh phase vector for every photon.
struct MeanFieldIndependentModel {};
struct CoherentModel {
    CoherentInput amplitudes;
};
struct PartiallyDistinguishableModel {
    OverlapCoefficients coefficients;
};

using SamplerModel = std::variant<BosonModel, ClassicalModel, MeanFieldSharedModel, MeanFieldIndependentModel,
                                  CoherentModel, PartiallyDistinguishableModel>;

inline std::string model_name(const SamplerModel &model) {
    return std::visit(overloaded{
                          [](const BosonModel &) { return "boson"; },
                          [](const ClassicalModel &) { return "classical"; },
                          [](const MeanFieldSharedModel &) { return "mf-shared"; },
                          [](const MeanFieldIndependentModel &) { return "mf-independent"; },
                          [](const CoherentModel &) { return "coherent"; },
                          [](const PartiallyDistinguishableModel &) { return "pd"; },
                      },
                      model);
}

/// Models that carry no parameters, by name. Coherent and pd need parameters and
/// are built by the caller.
inline SamplerModel parameterless_model(std::string_view name) {
    if (name == "boson") return BosonModel{};
    if (name == "classical") return ClassicalModel{};
    if (name == "mf-shared") return MeanFieldSharedModel{};
    if (name == "mf-independent" || name == "mf-analytic") return MeanFieldIndependentModel{};
    throw InputError("unknown or parameterized model '" + std::string(name) + "'");
}

}  // namespace bscert
