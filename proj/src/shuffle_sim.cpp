#include "shufflecap/shuffle_sim.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "shufflecap/errors.hpp"
#include "shufflecap/outer_bound.hpp"

namespace shufflecap {

std::string bits_to_hex(const BitString& bits)
{
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (size_t i = 0; i < bits.size(); i += 4) {
        int nib = 0;
        for (size_t b = 0; b < 4 && i + b < bits.size(); ++b)
            nib |= (bits[i + b] & 1) << (3 - b);
        out.push_back(digits[nib]);
    }
    return out;
}

BitString hex_to_bits(const std::string& hex, size_t nbits)
{
    if (hex.size() != (nbits + 3) / 4) throw InputError("hex_to_bits: length mismatch");
    BitString bits(nbits, 0);
    for (size_t i = 0; i < nbits; ++i) {
        char c = hex[i / 4];
        int nib = c >= '0' && c <= '9' ? c - '0'
                : c >= 'a' && c <= 'f' ? c - 'a' + 10
                                       : -1;
        if (nib < 0) throw InputError("hex_to_bits: bad digit");
        bits[i] = (nib >> (3 - i % 4)) & 1;
    }
    return bits;
}

CodedShuffleScheme build_scheme(int K, int r, int L)
{
    if (L < 1) throw InputError("build_scheme: L must be positive");
    auto p = derive_shuffle_problem(gen_family(K, r)); // rejects bad (K, r)

    CodedShuffleScheme s;
    s.K = K;
    s.r = r;
    s.g = K / (K - r);
    s.L = L;
    s.plan.resize(K);
    for (int j = 0; j < K; ++j)
        for (int i = 1; i < s.g; ++i) s.plan[j].push_back({(j + i) % K, i});

    // each segment carried exactly once, and only by a sender that holds it
    std::map<SegmentRef, int> seen;
    for (int j = 0; j < K; ++j) {
        for (const auto& ref : s.plan[j]) {
            ++seen[ref];
            if (!p.in_side_info(j, {ref.message, ref.message % s.g}))
                throw InvariantViolation("build_scheme: sender lacks a planned message");
            if ((ref.message - ref.segment - j) % K != 0)
                throw InvariantViolation("build_scheme: segment strayed from its sender");
        }
    }
    for (int k = 0; k < K; ++k)
        for (int i = 1; i < s.g; ++i)
            if (seen[{k, i}] != 1) throw InvariantViolation("build_scheme: segment coverage broken");
    return s;
}

namespace {

BitString random_bits(std::mt19937_64& rng, size_t n)
{
    BitString bits(n);
    uint64_t word = 0;
    for (size_t t = 0; t < n; ++t) {
        if (t % 64 == 0) word = rng();
        bits[t] = (word >> (t % 64)) & 1;
    }
    return bits;
}

void xor_segment(BitString& acc, const BitString& msg, int segment, int L)
{
    for (int b = 0; b < L; ++b) acc[b] ^= msg[(segment - 1) * L + b];
}

} // namespace

ShuffleTranscript run(const CodedShuffleScheme& scheme, uint64_t seed)
{
    const int K = scheme.K, g = scheme.g, L = scheme.L;
    ShuffleTranscript t;
    t.seed = seed;

    std::mt19937_64 rng(seed);
    for (int k = 0; k < K; ++k) t.messages.push_back(random_bits(rng, size_t(g - 1) * L));

    for (int j = 0; j < K; ++j) {
        BitString y(L, 0);
        for (const auto& ref : scheme.plan[j]) xor_segment(y, t.messages[ref.message], ref.segment, L);
        t.transmissions.push_back(std::move(y));
    }

    for (int k = 0; k < K; ++k) {
        BitString rec(size_t(g - 1) * L, 0);
        for (int u = 1; u < g; ++u) {
            int j = ((k - u) % K + K) % K;
            BitString seg = t.transmissions[j];
            for (const auto& ref : scheme.plan[j]) {
                if (ref.segment == u) continue; // that is the wanted component
                if (ref.message % g == k % g)
                    throw InvariantViolation("run: decoder would need a missing message");
                xor_segment(seg, t.messages[ref.message], ref.segment, L);
            }
            std::copy(seg.begin(), seg.end(), rec.begin() + size_t(u - 1) * L);
        }
        t.verdicts.push_back(rec == t.messages[k]);
        t.decoded.push_back(std::move(rec));
    }
    return t;
}

bool ShuffleTranscript::all_ok() const
{
    for (bool v : verdicts)
        if (!v) return false;
    return !verdicts.empty();
}

RateReport rate_report(const CodedShuffleScheme& scheme, const std::vector<Rational>& capacities)
{
    if (static_cast<int>(capacities.size()) != scheme.K)
        throw InputError("rate_report: capacity count differs from K");
    for (const auto& c : capacities)
        if (c != capacities[0]) throw NonuniformCapacity("rate_report: capacities must be uniform");
    const Rational C = capacities[0];
    if (C <= 0) throw InputError("rate_report: capacity must be positive");

    RateReport rep;
    rep.K = scheme.K;
    rep.r = scheme.r;
    rep.g = scheme.g;
    rep.L = scheme.L;
    rep.capacity = C;
    rep.blocklength = Rational(scheme.L) / C;
    rep.rate = Rational(scheme.g - 1) * C;
    rep.identity_holds = Rational(scheme.K - scheme.r) * (scheme.g - 1) == scheme.r;

    HPolytope fam = family_outer_region(scheme.K, scheme.r, capacities);
    rep.outer_feasible = true;
    rep.group_rows_tight = true;
    for (const auto& iq : fam.ineqs) {
        Rational lhs = 0;
        for (const auto& [v, c] : iq.coeffs) lhs += c * rep.rate;
        rep.outer_feasible = rep.outer_feasible && lhs <= iq.rhs;
        rep.group_rows_tight = rep.group_rows_tight && lhs == iq.rhs;
    }
    return rep;
}

} // namespace shufflecap
