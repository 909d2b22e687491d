#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "majmech/errors.hpp"
#include "majmech/rational.hpp"

namespace majmech {

/// The two options under vote. In the supermajority variant the convention is
/// fixed: A plays the status quo, B plays the alternative policy x.
enum class Alt : std::uint8_t { A = 0, B = 1 };

inline Alt other(Alt x) { return x == Alt::A ? Alt::B : Alt::A; }
inline char to_char(Alt x) { return x == Alt::A ? 'a' : 'b'; }
Alt alt_from_char(char c);

/// Agents are 0-based in memory; all external formats (profile files,
/// transcripts, reports) are 1-based.
using AgentId = int;

/// Strict, complete preference of every agent over {A, B}, stored as each
/// agent's preferred option.
class PreferenceProfile {
  public:
    explicit PreferenceProfile(std::vector<Alt> prefs);
    static PreferenceProfile from_string(std::string_view text);  // e.g. "aabab"

    int n() const { return static_cast<int>(prefs_.size()); }
    bool odd() const { return n() % 2 == 1; }
    /// Half the room: n = 2p+1 when odd, n = 2p when even.
    int p() const { return odd() ? (n() - 1) / 2 : n() / 2; }

    Alt pref(AgentId i) const { return prefs_[static_cast<std::size_t>(i)]; }
    bool prefers(AgentId i, Alt x) const { return pref(i) == x; }
    int count(Alt x) const;

    PreferenceProfile flipped() const;  // every preference reversed
    std::string str() const;

    friend bool operator==(const PreferenceProfile&, const PreferenceProfile&) = default;

  private:
    std::vector<Alt> prefs_;
};

/// A lottery over {A, B}, stored as the exact probability of A.
struct Lottery {
    Rational pA;

    Lottery() = default;
    explicit Lottery(Rational p);
    static Lottery degenerate(Alt x) { return Lottery(x == Alt::A ? Rational(1) : Rational(0)); }
    static Lottery half() { return Lottery(Rational(1, 2)); }

    Rational prob(Alt x) const { return x == Alt::A ? pA : Rational(1) - pA; }
    bool is_degenerate() const { return pA.is_zero() || pA.is_one(); }

    /// Canonical machine form "pA=<num>/<den>".
    std::string str() const { return "pA=" + pA.str(); }
    /// Human form "2/5a+3/5b", collapsing to "a" / "b" when degenerate.
    std::string pretty() const;

    friend bool operator==(const Lottery&, const Lottery&) = default;
    friend std::strong_ordering operator<=>(const Lottery& x, const Lottery& y) {
        return x.pA <=> y.pA;
    }
};

enum class SdComparison : std::uint8_t {
    FirstStrictlyPreferred,
    Indifferent,
    SecondStrictlyPreferred,
};

/// Stochastic dominance order for an agent whose preferred option is
/// `preferred`: decided solely by the probability each lottery puts on it.
/// Exact rational comparison, no tolerance.
SdComparison sd_compare(Alt preferred, const Lottery& lhs, const Lottery& rhs);

inline bool sd_strictly_better(Alt preferred, const Lottery& lhs, const Lottery& rhs) {
    return sd_compare(preferred, lhs, rhs) == SdComparison::FirstStrictlyPreferred;
}

/// Simple majority rule for odd n = 2p+1: A iff at least p+1 agents prefer A.
Alt maj(const PreferenceProfile& profile);

/// Majority correspondence for even n = 2p: a singleton on a strict majority,
/// {A, B} on a p-p tie.
std::set<Alt> maj_even(const PreferenceProfile& profile);

/// Supermajority rule over status quo A and alternative B, odd n: B iff at
/// least p+k agents prefer B, 1 <= k <= p+1 (k = 1 is simple majority,
/// k = p+1 unanimity).
Alt maj_k(const PreferenceProfile& profile, int k);

/// Exact convex mixture; the weights must sum to one exactly.
Lottery lottery_mix(const std::vector<std::pair<Rational, Lottery>>& parts);

}  // namespace majmech
