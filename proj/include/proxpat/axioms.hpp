#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "proxpat/errors.hpp"
#include "proxpat/space.hpp"

namespace proxpat {

enum class AxiomSystem { spatial, descriptive };

inline const char* to_string(AxiomSystem system) {
    return system == AxiomSystem::spatial ? "spatial" : "descriptive";
}

/// Instantiation of an axiom's quantified subsets (A, B, C) that falsifies
/// it. Axioms quantifying over fewer sets leave the trailing slots empty.
struct AxiomWitness {
    std::vector<PointId> a;
    std::vector<PointId> b;
    std::vector<PointId> c;
};

struct AxiomReport {
    std::string axiom;          // "P0".."P4" or "dP0".."dP4"
    AxiomSystem system = AxiomSystem::spatial;
    bool passed = true;
    std::uint64_t checked = 0;  // instances examined before pass/first failure
    std::optional<AxiomWitness> witness;
};

inline bool all_axioms_pass(const std::vector<AxiomReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const AxiomReport& r) { return r.passed; });
}

struct ValidationOptions {
    /// Exhaustive subset-triple enumeration up to this many points (hard cap
    /// 10 - the triple count is 8^n); larger spaces fall back to sampling.
    std::size_t exhaustive_max_points = 6;
    std::uint64_t sample_budget = 1000;  // sampled instances per axiom
    std::uint64_t seed = 0;              // sampling RNG seed
};

/// Relation under test, over subsets encoded as bitmasks (bit i = point id
/// i). Supply one to probe a deliberately broken relation; leave empty to
/// test the space's own nearness relation.
using SubsetRelation = std::function<bool(std::uint64_t, std::uint64_t)>;

namespace detail {

struct MaskTables {
    std::size_t n = 0;
    std::vector<std::uint64_t> zero_mask;  // per point: points at metric distance zero
    std::vector<std::uint64_t> desc_bit;   // per point: bit of its description class

    std::uint64_t closure(std::uint64_t m) const {
        std::uint64_t r = 0;
        while (m) {
            r |= zero_mask[static_cast<std::size_t>(std::countr_zero(m))];
            m &= m - 1;
        }
        return r;
    }

    std::uint64_t descriptions(std::uint64_t m) const {
        std::uint64_t r = 0;
        while (m) {
            r |= desc_bit[static_cast<std::size_t>(std::countr_zero(m))];
            m &= m - 1;
        }
        return r;
    }
};

inline MaskTables build_mask_tables(const DescriptiveSpace& space) {
    MaskTables t;
    t.n = space.size();
    t.zero_mask.assign(t.n, 0);
    t.desc_bit.assign(t.n, 0);
    for (std::size_t x = 0; x < t.n; ++x) {
        for (std::size_t y = 0; y < t.n; ++y) {
            if (space.distance(static_cast<PointId>(x), static_cast<PointId>(y)) == 0.0) {
                t.zero_mask[x] |= 1ull << y;
            }
        }
    }
    std::map<FeatureVector, std::size_t> classes;
    for (std::size_t x = 0; x < t.n; ++x) {
        auto [it, inserted] =
            classes.emplace(space.description(static_cast<PointId>(x)), classes.size());
        t.desc_bit[x] = 1ull << it->second;
    }
    return t;
}

inline std::vector<PointId> mask_points(std::uint64_t m) {
    std::vector<PointId> ids;
    while (m) {
        ids.push_back(static_cast<PointId>(std::countr_zero(m)));
        m &= m - 1;
    }
    return ids;
}

inline AxiomWitness make_witness(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return AxiomWitness{mask_points(a), mask_points(b), mask_points(c)};
}

/// All subset instances of axiom `index` (0..4) over an n-point space.
template <class Rel>
AxiomReport check_exhaustive(int index, std::size_t n, const Rel& rel) {
    AxiomReport report;
    const std::uint64_t count = 1ull << n;
    switch (index) {
    case 0:  // empty set is far from everything
        for (std::uint64_t a = 0; a < count; ++a) {
            ++report.checked;
            if (rel(0, a)) {
                report.passed = false;
                report.witness = make_witness(a, 0, 0);
                return report;
            }
        }
        break;
    case 1:  // symmetry
        for (std::uint64_t a = 0; a < count; ++a) {
            for (std::uint64_t b = 0; b < count; ++b) {
                ++report.checked;
                if (rel(a, b) != rel(b, a)) {
                    report.passed = false;
                    report.witness = make_witness(a, b, 0);
                    return report;
                }
            }
        }
        break;
    case 2:  // shared point implies near
        for (std::uint64_t a = 0; a < count; ++a) {
            for (std::uint64_t b = 0; b < count; ++b) {
                ++report.checked;
                if ((a & b) != 0 && !rel(a, b)) {
                    report.passed = false;
                    report.witness = make_witness(a, b, 0);
                    return report;
                }
            }
        }
        break;
    case 3:  // near a union iff near a part
        for (std::uint64_t a = 0; a < count; ++a) {
            for (std::uint64_t b = 0; b < count; ++b) {
                for (std::uint64_t c = 0; c < count; ++c) {
                    ++report.checked;
                    if (rel(a, b | c) != (rel(a, b) || rel(a, c))) {
                        report.passed = false;
                        report.witness = make_witness(a, b, c);
                        return report;
                    }
                }
            }
        }
        break;
    case 4:  // transitivity through singleton bridges
        for (std::uint64_t c = 0; c < count; ++c) {
            std::uint64_t near_c = 0;  // singletons near C
            for (std::size_t x = 0; x < n; ++x) {
                if (rel(1ull << x, c)) near_c |= 1ull << x;
            }
            for (std::uint64_t b = 0; b < count; ++b) {
                if ((b & near_c) != b) {  // some b in B is far from C: premise fails
                    report.checked += count;
                    continue;
                }
                for (std::uint64_t a = 0; a < count; ++a) {
                    ++report.checked;
                    if (rel(a, b) && !rel(a, c)) {
                        report.passed = false;
                        report.witness = make_witness(a, b, c);
                        return report;
                    }
                }
            }
        }
        break;
    }
    return report;
}

/// Random subset instances of axiom `index`; budget draws.
template <class Rel>
AxiomReport check_sampled(int index, std::size_t n, const Rel& rel, std::uint64_t budget,
                          std::mt19937_64& rng) {
    AxiomReport report;
    const std::uint64_t full = n >= 64 ? ~0ull : (1ull << n) - 1;
    for (std::uint64_t i = 0; i < budget; ++i) {
        const std::uint64_t a = rng() & full;
        const std::uint64_t b = rng() & full;
        const std::uint64_t c = rng() & full;
        ++report.checked;
        bool holds = true;
        std::uint64_t wa = a, wb = b, wc = c;
        switch (index) {
        case 0:
            holds = !rel(0, a);
            wb = wc = 0;
            break;
        case 1:
            holds = rel(a, b) == rel(b, a);
            wc = 0;
            break;
        case 2:
            holds = (a & b) == 0 || rel(a, b);
            wc = 0;
            break;
        case 3:
            holds = rel(a, b | c) == (rel(a, b) || rel(a, c));
            break;
        case 4: {
            bool premise = rel(a, b);
            for (std::uint64_t m = b; m != 0 && premise; m &= m - 1) {
                premise = rel(1ull << std::countr_zero(m), c);
            }
            holds = !premise || rel(a, c);
            break;
        }
        }
        if (!holds) {
            report.passed = false;
            report.witness = make_witness(wa, wb, wc);
            return report;
        }
    }
    return report;
}

} // namespace detail

/// Checks the five axioms of one system against the space's nearness
/// relation (or a supplied replacement). Exhaustive over all subset triples
/// for small spaces, budgeted random sampling otherwise. Report-only: a
/// failed axiom yields a witness, not an exception.
inline std::vector<AxiomReport> validate_axioms(const DescriptiveSpace& space,
                                                AxiomSystem system,
                                                ValidationOptions options = {},
                                                SubsetRelation relation = {}) {
    const std::size_t n = space.size();
    if (n == 0) {
        throw InvalidValue("validate_axioms: space must be non-empty");
    }
    if (n > 64) {
        throw InvalidValue("validate_axioms: at most 64 points (subsets are bitmasks)");
    }

    static constexpr const char* spatial_names[5] = {"P0", "P1", "P2", "P3", "P4"};
    static constexpr const char* descriptive_names[5] = {"dP0", "dP1", "dP2", "dP3", "dP4"};
    const auto& names = system == AxiomSystem::spatial ? spatial_names : descriptive_names;

    const bool exhaustive = n <= std::min<std::size_t>(options.exhaustive_max_points, 10);
    std::mt19937_64 rng(options.seed);

    std::vector<AxiomReport> reports;
    reports.reserve(5);
    auto run = [&](const auto& rel) {
        for (int i = 0; i < 5; ++i) {
            AxiomReport r = exhaustive
                                ? detail::check_exhaustive(i, n, rel)
                                : detail::check_sampled(i, n, rel, options.sample_budget, rng);
            r.axiom = names[i];
            r.system = system;
            reports.push_back(std::move(r));
        }
    };

    if (relation) {
        run(relation);
        return reports;
    }

    const detail::MaskTables tables = detail::build_mask_tables(space);
    if (exhaustive) {
        // One closure/description key per subset; each relation query is two
        // lookups and an AND.
        const std::uint64_t count = 1ull << n;
        std::vector<std::uint64_t> key(count);
        for (std::uint64_t m = 0; m < count; ++m) {
            const std::uint64_t cl = tables.closure(m);
            key[m] = system == AxiomSystem::spatial ? cl : tables.descriptions(cl);
        }
        run([&key](std::uint64_t a, std::uint64_t b) { return (key[a] & key[b]) != 0; });
    } else if (system == AxiomSystem::spatial) {
        run([&tables](std::uint64_t a, std::uint64_t b) {
            return (tables.closure(a) & tables.closure(b)) != 0;
        });
    } else {
        run([&tables](std::uint64_t a, std::uint64_t b) {
            return (tables.descriptions(tables.closure(a)) &
                    tables.descriptions(tables.closure(b))) != 0;
        });
    }
    return reports;
}

/// Deterministic pseudo-random test space: n points under the discrete
/// metric, one intensity channel drawn from the palette (default: five gray
/// levels, so small spaces repeat descriptions).
inline DescriptiveSpace make_random_space(std::uint64_t seed, std::size_t n,
                                          std::vector<double> palette = {}) {
    if (n == 0 || n > 64) {
        throw InvalidValue("make_random_space: need 1..64 points");
    }
    if (palette.empty()) {
        palette = {0.12, 0.27, 0.42, 0.63, 0.83};
    }
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> raws(n);
    for (auto& raw : raws) {
        raw = {palette[static_cast<std::size_t>(rng() % palette.size())]};
    }
    return DescriptiveSpace::from_raw(raws, ProbeSet({ProbeDescriptor::intensity(2)}));
}

} // namespace proxpat
