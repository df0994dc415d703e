// Copyright 2026 The ccsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ccsim {

using Count = std::int64_t;
using Rational = boost::rational<std::int64_t>;

// "p/q" in lowest terms; integers still carry "/1".
std::string to_pq(const Rational& r);

// Accepts "p/q" or a bare integer.
Rational parse_pq(const std::string& text);

// Fixed six-digit decimal rendering, rounded half away from zero.
std::string to_decimal(const Rational& r, int digits = 6);

double to_double(const Rational& r);

}  // namespace ccsim
