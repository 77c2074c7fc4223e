// Copyright 2026 The logshift Authors.
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

#ifndef LOGSHIFT_LOGSHIFT_HPP_
#define LOGSHIFT_LOGSHIFT_HPP_

#include "logshift/characterization.hpp"
#include "logshift/distributions.hpp"
#include "logshift/errors.hpp"
#include "logshift/identity.hpp"
#include "logshift/order_stat_cf.hpp"
#include "logshift/quadrature.hpp"
#include "logshift/rng.hpp"
#include "logshift/special_functions.hpp"
#include "logshift/two_sample.hpp"
#include "logshift/verify.hpp"

namespace logshift {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace logshift

#endif  // LOGSHIFT_LOGSHIFT_HPP_
