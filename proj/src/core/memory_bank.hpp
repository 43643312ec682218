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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/config.hpp"
#include "core/types.hpp"

namespace chainmind {

// Append-only, time-ordered token store. Records are sorted by record_time
// with ties broken by insertion order; positions are indices into the record
// sequence and stay stable until a prune or merge rebuilds the store.
//
// Concurrency contract: single writer, multiple readers. All mutations
// (append, prune, value updates) must be serialized by the caller; reads may
// run concurrently against an unchanging bank.
class MemoryBank {
public:
    explicit MemoryBank(const Config& config);

    // ------------------------------------------------------------------
    // Growth
    // ------------------------------------------------------------------

    // Appends payloads at times base_time, base_time + spacing, ... with
    // memory and activation initialized to zero. Returns the new positions.
    // Spacing 0 forms a simultaneous group. Rejects payloads whose feature
    // dimension differs from the bank's, and base times earlier than the
    // current tail.
    std::vector<std::size_t> append(const std::vector<TokenPayload>& payloads,
                                    Tick base_time, Tick spacing = 1);

    // Removes every record whose memory and activation are both exactly
    // zero, preserving the relative order of survivors. Returns the number
    // removed. All previously issued positions and reports are invalidated.
    std::size_t prune();

    // ------------------------------------------------------------------
    // Persistence (versioned line-oriented text format)
    // ------------------------------------------------------------------

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    [[nodiscard]] std::string save_text() const;

    static MemoryBank load(std::istream& in);
    static MemoryBank load_file(const std::string& path);
    static MemoryBank load_text(const std::string& text);

    // ------------------------------------------------------------------
    // Merge
    // ------------------------------------------------------------------

    // Concatenates two banks on one timeline. `b`'s record times are shifted
    // by `b_offset`; by default b is placed after a's last tick with a gap
    // wide enough that no cross-bank proximity relation can form. Memory
    // values carry over unchanged; all activation values reset to zero.
    static MemoryBank merge(const MemoryBank& a, const MemoryBank& b,
                            std::optional<Tick> b_offset = std::nullopt);

    static constexpr Tick kDefaultMergeGap = 64;

    // ------------------------------------------------------------------
    // Access
    // ------------------------------------------------------------------

    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
    [[nodiscard]] const TokenRecord& record(std::size_t pos) const;
    [[nodiscard]] std::span<const TokenRecord> records() const noexcept {
        return records_;
    }
    [[nodiscard]] Tick last_time() const;

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double m_max() const noexcept { return m_max_; }
    [[nodiscard]] double a_max() const noexcept { return a_max_; }
    [[nodiscard]] std::uint64_t fingerprint() const noexcept;

    // Monotonic mutation counter; bumped by every mutation. Reports capture
    // it so later consumers can detect staleness.
    [[nodiscard]] std::uint64_t version() const noexcept { return version_; }

    [[nodiscard]] std::span<const std::size_t> positions_of(
        const std::string& symbol) const;

    // ------------------------------------------------------------------
    // Value columns (clamped to [0, m_max] / [0, a_max])
    // ------------------------------------------------------------------

    void set_memory_value(std::size_t pos, double value);
    void set_activation_value(std::size_t pos, double value);
    void set_frozen(std::size_t pos, bool frozen);
    void bump_version() noexcept { ++version_; }

    // Index range [first, last) of records whose record_time lies within
    // `window` ticks of `center`.
    [[nodiscard]] std::pair<std::size_t, std::size_t> time_window(
        Tick center, Tick window) const;

private:
    MemoryBank() = default;

    void check_dimension(const TokenPayload& payload) const;
    void rebuild_index();

    std::vector<TokenRecord> records_;
    std::unordered_map<std::string, std::vector<std::size_t>> symbol_index_;
    std::size_t dim_ = 64;
    double m_max_ = 255.0;
    double a_max_ = 255.0;
    std::uint64_t version_ = 0;
};

}  // namespace chainmind
