// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmetro {

/// Base class for all qmetro errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QMETRO_DEFINE_ERROR(Name)            \
    struct Name : Error {                    \
        using Error::Error;                  \
    }

QMETRO_DEFINE_ERROR(NonHermitian);
QMETRO_DEFINE_ERROR(NotSymmetricUnitary);
QMETRO_DEFINE_ERROR(DimensionMismatch);
QMETRO_DEFINE_ERROR(OutOfDomain);
QMETRO_DEFINE_ERROR(InvalidState);
QMETRO_DEFINE_ERROR(DegenerateState);
QMETRO_DEFINE_ERROR(NotConjugation);
QMETRO_DEFINE_ERROR(NotPure);
QMETRO_DEFINE_ERROR(SingularQfim);
QMETRO_DEFINE_ERROR(UnknownName);
QMETRO_DEFINE_ERROR(InvalidSpec);
QMETRO_DEFINE_ERROR(NoKnownGas);
QMETRO_DEFINE_ERROR(ConfigError);

#undef QMETRO_DEFINE_ERROR

}  // namespace qmetro
