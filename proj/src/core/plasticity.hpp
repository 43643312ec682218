// Copyright 2026 The chainmind Authors
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

#include "core/activation.hpp"
#include "core/config.hpp"
#include "core/memory_bank.hpp"

namespace chainmind {

// Memory increment for a record at memory m0 that just held activation a:
//   dm = rate * a * (1 - m0 / m_max)
// Positive in a, saturating toward m_max. The default rate 1.4 puts a fresh
// record activated at 90 onto memory 126.
double memory_increment(double m0, double activation, const Config& config);

// Applies the increment to every record the report activated (activation
// > 0), leaving all other records untouched. Rejects reports taken against
// a different bank state. Returns the number of records updated.
std::size_t reinforce(MemoryBank& bank, const ActivationReport& report,
                      const Config& config);

// Multiplies every memory value by 2^(-dt / half_life_memory); values below
// 0.01 clamp to exactly zero (and become prunable). Frozen records keep
// their memory.
void forget(MemoryBank& bank, Tick dt, const Config& config);

}  // namespace chainmind
