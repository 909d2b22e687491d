#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "majmech/core.hpp"
#include "majmech/random.hpp"

using namespace majmech;

namespace {

PreferenceProfile prefs(const std::string& s) { return PreferenceProfile::from_string(s); }

PreferenceProfile random_prefs(int n, SplitMix64& rng) {
    std::vector<Alt> p;
    for (int i = 0; i < n; ++i) p.push_back(rng.below(2) ? Alt::B : Alt::A);
    return PreferenceProfile(std::move(p));
}

// Count-threshold rule shared by both parities, used as a local oracle.
std::set<Alt> threshold_winners(const PreferenceProfile& R) {
    std::set<Alt> out;
    const int need = R.p() + 1;
    if (R.count(Alt::A) >= need) out.insert(Alt::A);
    if (R.count(Alt::B) >= need) out.insert(Alt::B);
    if (out.empty()) out = {Alt::A, Alt::B};
    return out;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(4, 10) == Rational(2, 5));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 10) * Rational(1, 5) == Rational(1, 50));
    CHECK(Rational(3, 4) - Rational(3, 4) == Rational(0));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(1, -2).num() == -1);
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK(Rational::parse("3/10") == Rational(3, 10));
    CHECK(Rational::parse("2") == Rational(2));
    CHECK(Rational(1, 2) < Rational(2, 3));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("maj selects the p+1 threshold option") {
    CHECK(maj(prefs("aaabb")) == Alt::A);
    CHECK(maj(prefs("bbb")) == Alt::B);
    CHECK(maj(prefs("abbaaba")) == Alt::A);  // 4 of 7
    CHECK_THROWS_AS(maj(prefs("aabb")), ParityError);
}

TEST_CASE("maj_even returns the correspondence") {
    CHECK(maj_even(prefs("aaab")) == std::set<Alt>{Alt::A});
    CHECK(maj_even(prefs("aabb")) == std::set<Alt>{Alt::A, Alt::B});
    CHECK(maj_even(prefs("bbbb")) == std::set<Alt>{Alt::B});
    CHECK_THROWS_AS(maj_even(prefs("aab")), ParityError);
}

TEST_CASE("maj_k thresholds against the status quo") {
    // k=1 is the simple majority rule.
    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto R = random_prefs(5, rng);
        CHECK(maj_k(R, 1) == maj(R));
    }
    // n=5, k=2: three supporters of x are not enough (p+k = 4).
    CHECK(maj_k(prefs("abbba"), 2) == Alt::A);
    // unanimity boundary k = p+1.
    CHECK(maj_k(prefs("bbbbb"), 3) == Alt::B);
    CHECK(maj_k(prefs("abbbb"), 3) == Alt::A);
    CHECK_THROWS_AS(maj_k(prefs("aaabb"), 0), DomainError);
    CHECK_THROWS_AS(maj_k(prefs("aaabb"), 4), DomainError);
    CHECK_THROWS_AS(maj_k(prefs("aabb"), 1), ParityError);
}

TEST_CASE("maj_k is monotone toward the status quo in k") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto R = random_prefs(7, rng);
        for (int k = 1; k <= 3; ++k) {
            if (maj_k(R, k) == Alt::A) {
                for (int k2 = k; k2 <= 4; ++k2) CHECK(maj_k(R, k2) == Alt::A);
            }
        }
    }
}

TEST_CASE("maj flips under label reversal") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto R = random_prefs(5, rng);
        CHECK(maj(R.flipped()) == other(maj(R)));
    }
}

TEST_CASE("odd-n majority agrees with the threshold correspondence") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto R = random_prefs(7, rng);
        const auto winners = threshold_winners(R);
        REQUIRE(winners.size() == 1);
        CHECK(*winners.begin() == maj(R));
    }
    // Even profiles with a strict majority match it too.
    for (int trial = 0; trial < 300; ++trial) {
        const auto R = random_prefs(6, rng);
        const auto strict = maj_even(R);
        if (strict.size() == 1) CHECK(strict == threshold_winners(R));
    }
}

TEST_CASE("sd_compare orders lotteries by the preferred option's probability") {
    const Lottery x{Rational(3, 5)};
    const Lottery y{Rational(2, 5)};
    CHECK(sd_compare(Alt::A, x, y) == SdComparison::FirstStrictlyPreferred);
    CHECK(sd_compare(Alt::B, x, y) == SdComparison::SecondStrictlyPreferred);
    CHECK(sd_compare(Alt::A, Lottery::half(), Lottery::half()) == SdComparison::Indifferent);
    CHECK(sd_compare(Alt::B, Lottery::half(), Lottery::half()) == SdComparison::Indifferent);
}

TEST_CASE("sd_compare is transitive and antisymmetric on random rationals") {
    SplitMix64 rng(13);
    auto random_lottery = [&rng]() {
        const auto den = 1 + rng.below(20);
        return Lottery(Rational(static_cast<std::int64_t>(rng.below(den + 1)),
                                static_cast<std::int64_t>(den)));
    };
    for (int trial = 0; trial < 500; ++trial) {
        const Lottery a = random_lottery(), b = random_lottery(), c = random_lottery();
        for (Alt pref : {Alt::A, Alt::B}) {
            const auto ab = sd_compare(pref, a, b);
            const auto ba = sd_compare(pref, b, a);
            if (ab == SdComparison::FirstStrictlyPreferred)
                CHECK(ba == SdComparison::SecondStrictlyPreferred);
            if (ab == SdComparison::Indifferent) CHECK(ba == SdComparison::Indifferent);
            const auto bc = sd_compare(pref, b, c);
            if (ab == SdComparison::FirstStrictlyPreferred &&
                bc == SdComparison::FirstStrictlyPreferred)
                CHECK(sd_compare(pref, a, c) == SdComparison::FirstStrictlyPreferred);
        }
    }
}

TEST_CASE("lottery_mix is the exact convex combination") {
    const Lottery mixed = lottery_mix({{Rational(1, 10), Lottery(Rational(1, 5))},
                                       {Rational(9, 10), Lottery(Rational(0))}});
    CHECK(mixed.pA == Rational(1, 50));
    CHECK(lottery_mix({{Rational(1), Lottery(Rational(2, 7))}}).pA == Rational(2, 7));
    CHECK(lottery_mix({{Rational(1, 2), Lottery(Rational(1))},
                       {Rational(1, 2), Lottery(Rational(0))}})
              .pA == Rational(1, 2));
    CHECK_THROWS_AS(lottery_mix({{Rational(1, 2), Lottery(Rational(1))}}), NormalizationError);
    CHECK_THROWS_AS(lottery_mix({{Rational(-1, 2), Lottery(Rational(1))},
                                 {Rational(3, 2), Lottery(Rational(0))}}),
                    NormalizationError);
}

TEST_CASE("lottery formatting") {
    CHECK(Lottery(Rational(1, 5)).str() == "pA=1/5");
    CHECK(Lottery(Rational(1, 5)).pretty() == "1/5a+4/5b");
    CHECK(Lottery::degenerate(Alt::A).pretty() == "a");
    CHECK(Lottery::degenerate(Alt::B).str() == "pA=0/1");
    CHECK_THROWS_AS(Lottery(Rational(6, 5)), DomainError);
}

TEST_CASE("splitmix stream is deterministic") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 c(42);
    const auto first = draw_ordered(9, 5, c);
    SplitMix64 d(42);
    CHECK(draw_ordered(9, 5, d) == first);
}
