#include "majmech/core.hpp"

#include <algorithm>

namespace majmech {

Alt alt_from_char(char c) {
    if (c == 'a' || c == 'A') return Alt::A;
    if (c == 'b' || c == 'B') return Alt::B;
    throw ValidationError(std::string("unknown alternative '") + c + "' (expected 'a' or 'b')");
}

PreferenceProfile::PreferenceProfile(std::vector<Alt> prefs) : prefs_(std::move(prefs)) {
    if (prefs_.size() < 2)
        throw ValidationError("preference profile needs at least 2 agents");
}

PreferenceProfile PreferenceProfile::from_string(std::string_view text) {
    std::vector<Alt> prefs;
    prefs.reserve(text.size());
    for (char c : text) prefs.push_back(alt_from_char(c));
    return PreferenceProfile(std::move(prefs));
}

int PreferenceProfile::count(Alt x) const {
    return static_cast<int>(std::count(prefs_.begin(), prefs_.end(), x));
}

PreferenceProfile PreferenceProfile::flipped() const {
    std::vector<Alt> out(prefs_.size());
    std::transform(prefs_.begin(), prefs_.end(), out.begin(), [](Alt x) { return other(x); });
    return PreferenceProfile(std::move(out));
}

std::string PreferenceProfile::str() const {
    std::string s;
    s.reserve(prefs_.size());
    for (Alt x : prefs_) s.push_back(to_char(x));
    return s;
}

Lottery::Lottery(Rational p) : pA(p) {
    if (pA < Rational(0) || pA > Rational(1))
        throw DomainError("lottery probability " + pA.str() + " outside [0,1]");
}

std::string Lottery::pretty() const {
    if (pA.is_one()) return "a";
    if (pA.is_zero()) return "b";
    return pA.str() + "a+" + (Rational(1) - pA).str() + "b";
}

SdComparison sd_compare(Alt preferred, const Lottery& lhs, const Lottery& rhs) {
    const Rational pl = lhs.prob(preferred);
    const Rational pr = rhs.prob(preferred);
    if (pl > pr) return SdComparison::FirstStrictlyPreferred;
    if (pl < pr) return SdComparison::SecondStrictlyPreferred;
    return SdComparison::Indifferent;
}

Alt maj(const PreferenceProfile& profile) {
    if (!profile.odd())
        throw ParityError("maj requires odd n (use maj_even for n=2p)");
    return profile.count(Alt::A) >= profile.p() + 1 ? Alt::A : Alt::B;
}

std::set<Alt> maj_even(const PreferenceProfile& profile) {
    if (profile.odd())
        throw ParityError("maj_even requires even n");
    const int need = profile.p() + 1;
    if (profile.count(Alt::A) >= need) return {Alt::A};
    if (profile.count(Alt::B) >= need) return {Alt::B};
    return {Alt::A, Alt::B};
}

Alt maj_k(const PreferenceProfile& profile, int k) {
    if (!profile.odd())
        throw ParityError("maj_k requires odd n");
    if (k < 1 || k > profile.p() + 1)
        throw DomainError("maj_k threshold k=" + std::to_string(k) + " outside [1, p+1]");
    return profile.count(Alt::B) >= profile.p() + k ? Alt::B : Alt::A;
}

Lottery lottery_mix(const std::vector<std::pair<Rational, Lottery>>& parts) {
    Rational total(0), pA(0);
    for (const auto& [weight, lottery] : parts) {
        if (weight < Rational(0))
            throw NormalizationError("lottery_mix: negative weight " + weight.str());
        total += weight;
        pA += weight * lottery.pA;
    }
    if (!total.is_one())
        throw NormalizationError("lottery_mix: weights sum to " + total.str() + ", expected 1");
    return Lottery(pA);
}

}  // namespace majmech
