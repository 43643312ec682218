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

#include "core/plasticity.hpp"

#include <algorithm>
#include <cmath>

namespace chainmind {

double memory_increment(double m0, double activation, const Config& config) {
    if (activation <= 0.0) return 0.0;
    double headroom = 1.0 - m0 / config.m_max;
    if (headroom < 0.0) headroom = 0.0;
    return config.reinforce_rate * activation * headroom;
}

std::size_t reinforce(MemoryBank& bank, const ActivationReport& report,
                      const Config& config) {
    if (report.bank_version != bank.version())
        fail(ErrorCode::StaleReport,
             "report was produced against a different bank state");
    std::size_t updated = 0;
    for (const auto& [pos, activation] : report.ranked()) {
        if (activation <= 0.0) continue;
        double m0 = bank.record(pos).memory_value;
        double dm = memory_increment(m0, activation, config);
        if (dm == 0.0) continue;
        bank.set_memory_value(pos, std::min(config.m_max, m0 + dm));
        ++updated;
    }
    bank.bump_version();
    return updated;
}

void forget(MemoryBank& bank, Tick dt, const Config& config) {
    if (dt < 0) fail(ErrorCode::InvalidArgument, "dt must be >= 0");
    if (dt == 0) return;
    double factor = std::exp2(-static_cast<double>(dt) /
                              config.half_life_memory);
    for (std::size_t i = 0; i < bank.size(); ++i) {
        if (bank.record(i).frozen) continue;
        double m = bank.record(i).memory_value * factor;
        if (m < 0.01) m = 0.0;
        bank.set_memory_value(i, m);
    }
    bank.bump_version();
}

}  // namespace chainmind
