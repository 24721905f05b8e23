#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shufflecap/dc_model.hpp"

namespace shufflecap {

// One bit per entry, values 0/1.
using BitString = std::vector<uint8_t>;

// Packed 4 bits per lowercase hex digit, first bit highest within its nibble.
std::string bits_to_hex(const BitString& bits);
BitString hex_to_bits(const std::string& hex, size_t nbits);

struct SegmentRef {
    int message; // virtual receiver index k, wanting V_k
    int segment; // 1-based segment of V_k
    auto operator<=>(const SegmentRef&) const = default;
};

// Sender j broadcasts the XOR of segment i of V_{(j+i) mod K} over i in
// [1, g-1]; every message splits into g-1 segments of L bits. g = 2 has a
// single segment and the plan degenerates to uncoded forwarding.
struct CodedShuffleScheme {
    int K = 0, r = 0, g = 0;
    int L = 0;
    std::vector<std::vector<SegmentRef>> plan; // per sender, in segment order
};

// Throws DivisibilityError when (K-r) does not divide K. The plan's two
// invariants (each segment carried exactly once, senders XOR only held
// messages) are re-derived from the family instance before returning.
CodedShuffleScheme build_scheme(int K, int r, int L);

struct ShuffleTranscript {
    uint64_t seed = 0;
    std::vector<BitString> messages;      // V_k, (g-1)*L bits each
    std::vector<BitString> transmissions; // Y_j, L bits each
    std::vector<BitString> decoded;       // receiver k's reconstruction of V_k
    std::vector<bool> verdicts;           // exact match per receiver

    bool all_ok() const;
};

// Messages drawn from a seeded mt19937_64, words consumed low bit first.
// A decode mismatch is recorded in the verdict, never thrown.
ShuffleTranscript run(const CodedShuffleScheme& scheme, uint64_t seed);

struct RateReport {
    int K = 0, r = 0, g = 0;
    int L = 0;
    Rational capacity;        // uniform C
    Rational blocklength;     // L / C normalized symbols
    Rational rate;            // achieved R_k = (g-1) * C, every message
    bool outer_feasible = false;   // tuple satisfies each group inequality
    bool group_rows_tight = false; // and binds each one with equality
    bool identity_holds = false;   // (K-r)*(g-1) == r
};

// Requires a uniform positive capacity vector of length K; throws
// NonuniformCapacity on mismatch, InputError otherwise.
RateReport rate_report(const CodedShuffleScheme& scheme, const std::vector<Rational>& capacities);

} // namespace shufflecap
