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

#include "core/memory_bank.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/text_util.hpp"

namespace chainmind {

namespace {
constexpr char kBankMagic[] = "CHAINMIND-BANK v1";

double clamp_value(double value, double hi) {
    if (value < 0.0) return 0.0;
    if (value > hi) return hi;
    return value;
}
}  // namespace

MemoryBank::MemoryBank(const Config& config) {
    config.validate();
    dim_ = config.feature_dim;
    m_max_ = config.m_max;
    a_max_ = config.a_max;
}

void MemoryBank::check_dimension(const TokenPayload& payload) const {
    if (payload.feature && payload.feature->size() != dim_)
        fail(ErrorCode::Dimension,
             "payload '" + payload.symbol + "' has feature dimension " +
                 std::to_string(payload.feature->size()) +
                 ", bank dimension is " + std::to_string(dim_));
}

std::vector<std::size_t> MemoryBank::append(
    const std::vector<TokenPayload>& payloads, Tick base_time, Tick spacing) {
    if (spacing < 0)
        fail(ErrorCode::InvalidArgument, "spacing must be >= 0");
    if (payloads.empty()) return {};
    for (const TokenPayload& payload : payloads) {
        validate_payload(payload);
        check_dimension(payload);
    }
    if (!records_.empty() && base_time < records_.back().record_time)
        fail(ErrorCode::Ordering,
             "append at t=" + std::to_string(base_time) +
                 " is earlier than the bank tail t=" +
                 std::to_string(records_.back().record_time));

    std::vector<std::size_t> positions;
    positions.reserve(payloads.size());
    Tick t = base_time;
    for (const TokenPayload& payload : payloads) {
        TokenRecord record;
        record.record_time = t;
        record.payload = payload;
        positions.push_back(records_.size());
        symbol_index_[payload.symbol].push_back(records_.size());
        records_.push_back(std::move(record));
        t += spacing;
    }
    ++version_;
    return positions;
}

std::size_t MemoryBank::prune() {
    std::size_t before = records_.size();
    std::erase_if(records_, [](const TokenRecord& r) {
        return r.memory_value == 0.0 && r.activation_value == 0.0;
    });
    rebuild_index();
    ++version_;
    return before - records_.size();
}

void MemoryBank::rebuild_index() {
    symbol_index_.clear();
    for (std::size_t i = 0; i < records_.size(); ++i)
        symbol_index_[records_[i].payload.symbol].push_back(i);
}

const TokenRecord& MemoryBank::record(std::size_t pos) const {
    if (pos >= records_.size())
        fail(ErrorCode::InvalidArgument,
             "record position " + std::to_string(pos) + " out of range");
    return records_[pos];
}

Tick MemoryBank::last_time() const {
    return records_.empty() ? 0 : records_.back().record_time;
}

std::uint64_t MemoryBank::fingerprint() const noexcept {
    std::string canon = "dim=" + std::to_string(dim_) +
                        ";mmax=" + fmt_g9(m_max_) + ";amax=" + fmt_g9(a_max_);
    return fnv1a64(canon);
}

std::span<const std::size_t> MemoryBank::positions_of(
    const std::string& symbol) const {
    auto it = symbol_index_.find(symbol);
    if (it == symbol_index_.end()) return {};
    return it->second;
}

void MemoryBank::set_memory_value(std::size_t pos, double value) {
    if (pos >= records_.size())
        fail(ErrorCode::InvalidArgument, "record position out of range");
    records_[pos].memory_value = clamp_value(value, m_max_);
    ++version_;
}

void MemoryBank::set_activation_value(std::size_t pos, double value) {
    if (pos >= records_.size())
        fail(ErrorCode::InvalidArgument, "record position out of range");
    records_[pos].activation_value = clamp_value(value, a_max_);
    ++version_;
}

void MemoryBank::set_frozen(std::size_t pos, bool frozen) {
    if (pos >= records_.size())
        fail(ErrorCode::InvalidArgument, "record position out of range");
    records_[pos].frozen = frozen;
    ++version_;
}

std::pair<std::size_t, std::size_t> MemoryBank::time_window(
    Tick center, Tick window) const {
    auto lo = std::lower_bound(
        records_.begin(), records_.end(), center - window,
        [](const TokenRecord& r, Tick t) { return r.record_time < t; });
    auto hi = std::upper_bound(
        records_.begin(), records_.end(), center + window,
        [](Tick t, const TokenRecord& r) { return t < r.record_time; });
    return {static_cast<std::size_t>(lo - records_.begin()),
            static_cast<std::size_t>(hi - records_.begin())};
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

void MemoryBank::save(std::ostream& out) const {
    out << kBankMagic << "; dim=" << dim_ << "; mmax=" << fmt_g9(m_max_)
        << "; amax=" << fmt_g9(a_max_) << '\n';
    for (const TokenRecord& r : records_) {
        out << r.record_time << '\t' << kind_name(r.payload.kind) << '\t'
            << r.payload.symbol << '\t' << fmt_g9(r.memory_value) << '\t'
            << fmt_g9(r.activation_value) << '\t';
        if (r.payload.feature) {
            const FeatureVec& v = *r.payload.feature;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ',';
                out << fmt_g9(v[i]);
            }
        } else {
            out << '-';
        }
        if (r.frozen) out << "\tfrozen";
        out << '\n';
    }
}

void MemoryBank::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    save(out);
    if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

std::string MemoryBank::save_text() const {
    std::ostringstream out;
    save(out);
    return out.str();
}

namespace {

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
    fail(ErrorCode::Parse,
         "bank line " + std::to_string(line_no) + ": " + what);
}

double parse_value(std::size_t line_no, const std::string& text,
                   const char* what) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) bad_line(line_no, std::string(what) + ": trailing characters");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        bad_line(line_no, std::string(what) + ": invalid number '" + text + "'");
    }
}

}  // namespace

MemoryBank MemoryBank::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        fail(ErrorCode::Parse, "bank line 1: empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    // Header: CHAINMIND-BANK v1; dim=<d>; mmax=<f>; amax=<f>
    if (header.rfind(kBankMagic, 0) != 0)
        fail(ErrorCode::Parse,
             "bank line 1: unsupported format or version (expected '" +
                 std::string(kBankMagic) + "')");
    MemoryBank bank;
    bool saw_dim = false, saw_mmax = false, saw_amax = false;
    for (const std::string& part : split(header.substr(sizeof(kBankMagic) - 1), ';')) {
        std::string field = trim(part);
        if (field.empty()) continue;
        size_t eq = field.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::Parse, "bank line 1: malformed header field '" +
                                       field + "'");
        std::string key = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (key == "dim") {
            bank.dim_ = static_cast<std::size_t>(
                parse_value(1, value, "header dim"));
            saw_dim = true;
        } else if (key == "mmax") {
            bank.m_max_ = parse_value(1, value, "header mmax");
            saw_mmax = true;
        } else if (key == "amax") {
            bank.a_max_ = parse_value(1, value, "header amax");
            saw_amax = true;
        } else {
            fail(ErrorCode::Parse,
                 "bank line 1: unknown header field '" + key + "'");
        }
    }
    if (!saw_dim || !saw_mmax || !saw_amax)
        fail(ErrorCode::Parse, "bank line 1: missing dim/mmax/amax");

    std::string line;
    std::size_t line_no = 1;
    Tick prev_time = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split(line, '\t');
        if (fields.size() != 6 && fields.size() != 7)
            bad_line(line_no, "expected 6 or 7 tab-separated fields, got " +
                                  std::to_string(fields.size()));
        TokenRecord record;
        try {
            record.record_time = std::stoll(fields[0]);
        } catch (const std::exception&) {
            bad_line(line_no, "invalid record time '" + fields[0] + "'");
        }
        auto kind = parse_kind(fields[1]);
        if (!kind) bad_line(line_no, "unknown kind '" + fields[1] + "'");
        record.payload.kind = *kind;
        record.payload.symbol = fields[2];
        if (record.payload.symbol.empty())
            bad_line(line_no, "empty symbol");
        record.memory_value = parse_value(line_no, fields[3], "memory value");
        record.activation_value =
            parse_value(line_no, fields[4], "activation value");
        if (record.memory_value < 0.0 || record.memory_value > bank.m_max_)
            bad_line(line_no, "memory value out of [0, mmax]");
        if (record.activation_value < 0.0 ||
            record.activation_value > bank.a_max_)
            bad_line(line_no, "activation value out of [0, amax]");
        if (fields[5] != "-") {
            FeatureVec vec;
            for (const std::string& comp : split(fields[5], ','))
                vec.push_back(parse_value(line_no, comp, "vector component"));
            if (vec.size() != bank.dim_)
                fail(ErrorCode::Dimension,
                     "bank line " + std::to_string(line_no) +
                         ": vector has dimension " +
                         std::to_string(vec.size()) + ", header says " +
                         std::to_string(bank.dim_));
            record.payload.feature = std::move(vec);
        }
        if (fields.size() == 7) {
            if (fields[6] != "frozen")
                bad_line(line_no, "unknown extension field '" + fields[6] + "'");
            record.frozen = true;
        }
        if (!first && record.record_time < prev_time)
            bad_line(line_no, "record time goes backwards");
        prev_time = record.record_time;
        first = false;
        bank.symbol_index_[record.payload.symbol].push_back(
            bank.records_.size());
        bank.records_.push_back(std::move(record));
    }
    return bank;
}

MemoryBank MemoryBank::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open bank file '" + path + "'");
    return load(in);
}

MemoryBank MemoryBank::load_text(const std::string& text) {
    std::istringstream in(text);
    return load(in);
}

// ---------------------------------------------------------------------------
// Merge
// ---------------------------------------------------------------------------

MemoryBank MemoryBank::merge(const MemoryBank& a, const MemoryBank& b,
                             std::optional<Tick> b_offset) {
    if (a.dim_ != b.dim_)
        fail(ErrorCode::Dimension,
             "cannot merge banks of dimension " + std::to_string(a.dim_) +
                 " and " + std::to_string(b.dim_));
    if (a.fingerprint() != b.fingerprint())
        fail(ErrorCode::InvalidArgument,
             "cannot merge banks with incompatible configurations");

    Tick offset = 0;
    if (b_offset) {
        offset = *b_offset;
    } else if (!a.empty() && !b.empty()) {
        offset = a.last_time() + kDefaultMergeGap - b.records_.front().record_time;
    }

    MemoryBank out;
    out.dim_ = a.dim_;
    out.m_max_ = a.m_max_;
    out.a_max_ = a.a_max_;
    out.records_.reserve(a.size() + b.size());

    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        bool take_a;
        if (ia == a.size())
            take_a = false;
        else if (ib == b.size())
            take_a = true;
        else
            // Stable interleave: on equal shifted times, a's records first.
            take_a = a.records_[ia].record_time <=
                     b.records_[ib].record_time + offset;
        TokenRecord record = take_a ? a.records_[ia++] : b.records_[ib++];
        if (!take_a) record.record_time += offset;
        record.activation_value = 0.0;
        out.records_.push_back(std::move(record));
    }
    out.rebuild_index();
    return out;
}

}  // namespace chainmind
