#include "kgraph/align.hpp"

#include <algorithm>
#include <stdexcept>

namespace kgraph {

namespace {

void check_pair(const Path& mu, const Path& nu) {
    if (!mu.graph().same(nu.graph()))
        throw std::invalid_argument("mce: paths from different graphs");
}

// Visits each minimal common extension of (mu, nu); stops early when the
// visitor returns false.
template <typename Visit>
void for_each_mce(const Path& mu, const Path& nu, Visit visit) {
    check_pair(mu, nu);
    if (mu.range() != nu.range()) return;
    const Degree target = join(mu.degree(), nu.degree());
    const Degree ext = minus(target, mu.degree());
    for (const Path& tail : paths_from(mu.graph(), mu.source(), ext)) {
        Path lambda = compose(mu, tail);
        if (split(lambda, nu.degree()).first == nu) {
            if (!visit(std::move(lambda))) return;
        }
    }
}

}  // namespace

MceSet mce(const Path& mu, const Path& nu) {
    MceSet out{mu, nu, {}};
    for_each_mce(mu, nu, [&](Path lambda) {
        out.extensions.push_back(std::move(lambda));
        return true;
    });
    std::sort(out.extensions.begin(), out.extensions.end(), path_less);
    return out;
}

bool mce_empty(const Path& mu, const Path& nu) {
    bool found = false;
    for_each_mce(mu, nu, [&](Path) {
        found = true;
        return false;
    });
    return !found;
}

std::vector<Path> mce_sets(const std::vector<Path>& X, const std::vector<Path>& Y) {
    std::vector<Path> out;
    for (const Path& mu : X)
        for (const Path& nu : Y)
            for (const Path& lambda : mce(mu, nu).extensions)
                if (std::find(out.begin(), out.end(), lambda) == out.end())
                    out.push_back(lambda);
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

ExhaustiveResult is_exhaustive(const KGraph& g, const std::vector<Path>& E, VertexId v) {
    Degree bound = Degree::zero(g.rank());
    for (const Path& mu : E) {
        if (!mu.graph().same(g)) throw std::invalid_argument("is_exhaustive: foreign path in E");
        bound = join(bound, mu.degree());
    }
    for (const Path& lambda : paths_from_upto(g, v, bound)) {
        bool met = false;
        for (const Path& mu : E) {
            if (!mce_empty(lambda, mu)) {
                met = true;
                break;
            }
        }
        if (!met) return ExhaustiveResult{false, lambda};
    }
    return ExhaustiveResult{true, std::nullopt};
}

}  // namespace kgraph
