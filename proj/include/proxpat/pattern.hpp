#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "proxpat/errors.hpp"
#include "proxpat/groupoid.hpp"

namespace proxpat {

/// Identity of a pattern member: the region it came from and, for tiled
/// images, its window.
struct PatternMember {
    std::string id;
    std::optional<TileRect> tile;
};

/// A generator groupoid together with every candidate groupoid neighbourly
/// with it. Members are identities, generator first; member-to-member
/// neighbourliness is not required.
struct Pattern {
    Groupoid generator;
    std::vector<PatternMember> members;
    double tolerance = 0.0;
};

/// Collects the generator plus every neighbourly candidate, in candidate
/// order. Candidates are expected to come from a fixed tiling enumeration.
inline Pattern generate_pattern(const Groupoid& generator, std::span<const Groupoid> candidates,
                                double tolerance = 0.0) {
    if (generator.carrier().empty()) {
        throw EmptyRegion("generate_pattern: generator carrier must be non-empty");
    }
    Pattern pattern{generator, {}, tolerance};
    pattern.members.push_back(PatternMember{generator.region_id(), generator.tile()});
    for (const Groupoid& candidate : candidates) {
        if (groupoids_neighbourly(generator, candidate, tolerance)) {
            pattern.members.push_back(PatternMember{candidate.region_id(), candidate.tile()});
        }
    }
    return pattern;
}

/// How much of the candidate carrier the reference accounts for.
struct SaliencyScore {
    std::size_t matched = 0;  // candidate elements neighbourly with some reference element
    std::size_t total = 0;    // candidate carrier size
    double fraction = 0.0;    // matched / total
    double threshold = 0.0;
    bool salient = false;     // fraction >= threshold
};

/// Fraction of candidate carrier elements neighbourly with some reference
/// carrier element; salient when the fraction reaches the threshold.
inline SaliencyScore saliency(const Groupoid& reference, const Groupoid& candidate,
                              double threshold, double tolerance = 0.0) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw InvalidValue("saliency threshold must lie in [0,1]");
    }
    if (tolerance < 0.0) {
        throw InvalidValue("tolerance must be non-negative");
    }
    const DescriptionSet& ref = reference.carrier();
    const DescriptionSet& cand = candidate.carrier();
    if (ref.empty() || cand.empty()) {
        throw EmptyRegion("saliency: carriers must be non-empty");
    }
    if (!shapes_compatible(ref[0], cand[0])) {
        throw ProbeSetMismatch("saliency requires matching probe shapes");
    }
    std::size_t matched = 0;
    for (const FeatureVector& b : cand) {
        bool hit = false;
        if (tolerance == 0.0) {
            hit = ref.contains(b);
        } else {
            for (const FeatureVector& a : ref) {
                if (pseudometric(a, b) <= tolerance) {
                    hit = true;
                    break;
                }
            }
        }
        if (hit) ++matched;
    }
    SaliencyScore score;
    score.matched = matched;
    score.total = cand.size();
    score.fraction = static_cast<double>(matched) / static_cast<double>(cand.size());
    score.threshold = threshold;
    score.salient = score.fraction >= threshold;
    return score;
}

/// Neighbourly patterns: their generators are neighbourly groupoids.
inline bool patterns_neighbourly(const Pattern& a, const Pattern& b, double tolerance = 0.0) {
    return groupoids_neighbourly(a.generator, b.generator, tolerance);
}

/// All patterns mined from one image.
struct ImagePatterns {
    std::string image_id;
    std::vector<Pattern> patterns;
};

/// The pattern pair that produced a verdict.
struct PatternPairWitness {
    std::string candidate_pattern;  // generator region id, candidate side
    std::string reference_pattern;  // generator region id, reference side
};

struct ClassVerdict {
    std::string image_id;                          // candidate image
    std::optional<std::string> matched_reference;  // engaged iff matched
    SaliencyScore best{};  // best score among neighbourly pattern pairs
    std::optional<PatternPairWitness> witness;

    bool matched() const { return matched_reference.has_value(); }
};

/// Candidate matches the reference class iff some candidate pattern is
/// neighbourly with a reference pattern and its generator scores salient
/// against that reference generator. Ties: highest fraction, then first in
/// (candidate-major) list order.
inline ClassVerdict classify(const ImagePatterns& candidate, const ImagePatterns& reference,
                             double threshold, double tolerance = 0.0) {
    if (candidate.patterns.empty() || reference.patterns.empty()) {
        throw NoPatterns("classify: both images need at least one pattern");
    }
    ClassVerdict verdict;
    verdict.image_id = candidate.image_id;
    verdict.best.threshold = threshold;

    bool any_scored = false;
    bool best_salient = false;
    for (const Pattern& cp : candidate.patterns) {
        for (const Pattern& rp : reference.patterns) {
            if (!patterns_neighbourly(cp, rp, tolerance)) continue;
            const SaliencyScore score = saliency(rp.generator, cp.generator, threshold, tolerance);
            const bool better =
                !any_scored ||
                (score.salient && !best_salient) ||
                (score.salient == best_salient && score.fraction > verdict.best.fraction);
            if (better) {
                any_scored = true;
                best_salient = score.salient;
                verdict.best = score;
                verdict.witness = PatternPairWitness{cp.generator.region_id(),
                                                     rp.generator.region_id()};
                if (score.salient) {
                    verdict.matched_reference = reference.image_id;
                }
            }
        }
    }
    if (!verdict.matched()) {
        verdict.witness.reset();  // witness accompanies a match only
    }
    return verdict;
}

} // namespace proxpat
