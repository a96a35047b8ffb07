#pragma once

#include "kgraph/path.hpp"

#include <optional>
#include <vector>

namespace kgraph {

/// Minimal common extensions of a pair: the paths of degree exactly
/// d(mu) v d(nu) that factor through both mu and nu.
struct MceSet {
    Path mu;
    Path nu;
    std::vector<Path> extensions;  // sorted by path_less
    bool empty() const { return extensions.empty(); }
};

/// Exact MCE set; empty when the ranges differ. Computed by extending mu by
/// everything of the missing degree and filtering on the nu-prefix.
MceSet mce(const Path& mu, const Path& nu);

/// Emptiness only, stopping at the first common extension found.
bool mce_empty(const Path& mu, const Path& nu);

/// Union of mce over all pairs, duplicates removed, sorted by path_less.
std::vector<Path> mce_sets(const std::vector<Path>& X, const std::vector<Path>& Y);

struct ExhaustiveResult {
    bool exhaustive = false;
    std::optional<Path> counterexample;  // a path from v meeting nothing in E
};

/// Finite exhaustiveness check at v: every path from v with degree <= the
/// join D of the degrees in E (including shorter paths that cannot be
/// extended to D) must have a nonempty MCE with some member of E. Sound
/// because for d(lambda) >= d(mu), MCE(lambda, mu) != 0 iff
/// lambda(0, d(mu)) = mu.
ExhaustiveResult is_exhaustive(const KGraph& g, const std::vector<Path>& E, VertexId v);

}  // namespace kgraph
