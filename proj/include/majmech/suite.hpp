#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace majmech {

/// One replayed reference scenario.
struct ReproItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReproReport {
    std::vector<ReproItem> items;
    bool pass = false;
    std::string text() const;
};

/// Replays the bundled worked examples end to end: the five-agent bloc
/// analysis with its bloc-breaking deviation, the three confirmation-stage
/// transcripts around that deviation, the no-bloc/two-bloc nomination graphs,
/// and the two-voter abstention equilibrium. Output is deterministic.
ReproReport reproduce_reference_scenarios();

/// Smallest seed whose committee draw equals `order` exactly.
std::uint64_t find_seed_for_order(int n, int size, const std::vector<int>& order);

/// Concatenated machine reports of every verification target at desk scale.
/// Byte-identical across runs for a fixed (seed, jobs is irrelevant to the
/// bytes) — the determinism criterion compares two builds of this string.
std::string full_suite_report(std::uint64_t seed, int jobs);

}  // namespace majmech
