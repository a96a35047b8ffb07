#pragma once

#include "kgraph/align.hpp"
#include "kgraph/path.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kgraph {

/// Ultimately periodic path: prefix followed by the cycle repeated forever.
/// The cycle closes at the source of the prefix and has nonzero degree, so
/// every UPPath is a periodic point of the shift.
class UPPath {
public:
    UPPath(Path prefix, Path cycle);

    const Path& prefix() const { return prefix_; }
    const Path& cycle() const { return cycle_; }
    const KGraph& graph() const { return prefix_.graph(); }

    /// True when x(0, d) is defined: coordinates where the cycle is flat must
    /// stay within the prefix.
    bool representable(const Degree& d) const;
    /// x(0, d); throws when not representable.
    Path truncate(const Degree& d) const;

private:
    Path prefix_;
    Path cycle_;
};

/// sigma^m on finite paths: drops the degree-m initial segment.
Path shift(const Path& x, const Degree& m);

/// sigma^m on ultimately periodic paths. The new prefix absorbs everything up
/// to the next cycle boundary past m, so the cycle is reused unchanged.
UPPath shift(const UPPath& x, const Degree& m);

/// Morphism equality of ultimately periodic paths, decided on a finite
/// horizon: two periods of the coordinatewise lcm of the cycle degrees past
/// both prefixes. Paths with different degree supports are unequal.
bool up_equal(const UPPath& x, const UPPath& y);

// ---------------------------------------------------------------------------
// Bounded searches for the finite-path aperiodicity conditions.

/// lambda in vL with d(lambda) >= m v n whose two comparison windows differ:
///   lambda(m, m + d - (m v n)) != lambda(n, n + d - (m v n)).
struct StarWitness {
    VertexId v;
    Degree m, n;
    Path lambda;
};

/// tau with MCE(alpha.tau, beta.tau) empty.
struct TauWitness {
    Path alpha, beta, tau;
};

/// Entries for every simple cycle of a rank-1 graph: for each cycle, an edge
/// other than the cycle's own that enters at some position.
struct CycleEntry {
    std::vector<EdgeId> cycle;
    std::size_t position;  // position whose vertex also receives `entry`
    EdgeId entry;
};
struct EntryWitness {
    std::vector<CycleEntry> entries;
};

using Certificate = std::variant<StarWitness, TauWitness, EntryWitness>;

/// Outcome of a bounded existential search. Witnessed always carries a
/// certificate that re-verifies from scratch. RefutedUpToBound means the
/// whole bounded space was enumerated without a witness; `exhaustive` is set
/// when the enumeration provably covered the entire unbounded candidate
/// space, making the refutation definite. ExhaustedUnknown is reserved for
/// searches cut off before covering their bounds.
class Verdict {
public:
    enum class Kind { Witnessed, RefutedUpToBound, ExhaustedUnknown };

    static Verdict make_witnessed(Certificate cert);
    static Verdict make_refuted(Degree bound, bool exhaustive, std::string detail);
    static Verdict make_unknown(Degree bound, std::string detail);

    Kind kind() const { return kind_; }
    bool witnessed() const { return kind_ == Kind::Witnessed; }
    bool refuted() const { return kind_ == Kind::RefutedUpToBound; }
    bool definite_refutation() const { return refuted() && exhaustive_; }

    const Certificate& certificate() const;
    const Degree& bound() const { return bound_; }
    bool exhaustive() const { return exhaustive_; }
    const std::string& detail() const { return detail_; }

private:
    Kind kind_ = Kind::ExhaustedUnknown;
    std::optional<Certificate> cert_;
    Degree bound_;
    bool exhaustive_ = false;
    std::string detail_;
};

/// Searches vL for a path of degree between m v n and degree_bound satisfying
/// the window inequality for (m, n). Requires m != n.
Verdict find_star_witness(const KGraph& g, VertexId v, const Degree& m, const Degree& n,
                          const Degree& degree_bound);

/// Searches s(alpha)L for tau with MCE(alpha.tau, beta.tau) empty, degrees up
/// to tau_bound. Requires s(alpha) = s(beta) and alpha != beta. When the
/// ranges differ the source vertex itself is an immediate witness.
Verdict find_separating_tau(const KGraph& g, const Path& alpha, const Path& beta,
                            const Degree& tau_bound);

/// From a window witness to a separated pair: given mu, nu with equal range
/// and source, d(mu) ^ d(nu) = 0, and lambda in s(mu)L satisfying the window
/// inequality for (d(mu), d(nu)), returns (mu.lambda, nu.lambda), which can
/// have no common extension. The emptiness is re-checked internally and a
/// failure throws std::logic_error.
std::pair<Path, Path> separation_from_star(const Path& mu, const Path& nu, const Path& lambda);

/// From a separated pair back to a window witness: lambda0 in vL^{m v n},
/// tau0 separating the pair (lambda0(m, m v n), lambda0(n, m v n)), and any
/// tau1 in s(tau0)L^{m v n} assemble into lambda0.tau0.tau1, which satisfies
/// the window inequality for (m, n). Verified internally.
Path star_from_separation(const Path& lambda0, const Degree& m, const Degree& n, const Path& tau0,
                          const Path& tau1);

/// Extracts a window witness for (m, n) from an ultimately periodic path
/// whose m- and n-shifts differ on a common finite window. Returns nullopt
/// when the shifts agree on every common window (either equal paths, or
/// paths differing only beyond a flat coordinate).
std::optional<Path> star_from_aperiodic(const UPPath& x, const Degree& m, const Degree& n);

bool verify_star(const StarWitness& w);
bool verify_tau(const TauWitness& w);

/// Certificate that the two shifted copies of the prefix disagree for every
/// listed pair: window degrees are relative to the whole prefix.
struct PrefixPairEvidence {
    Degree m, n;       // the pair this block witnesses
    Degree offset;     // degree consumed before this block
    Degree block;      // degree of the appended witness block
};
struct AperiodicPrefix {
    Path prefix;
    std::vector<PrefixPairEvidence> pairs;
};
struct PrefixOutcome {
    std::optional<AperiodicPrefix> prefix;
    // set when some pair had no witness within the bound
    int failed_pair_index = -1;  // 1-based; -1 on success
    std::optional<Degree> failed_m, failed_n;
    bool ok() const { return prefix.has_value(); }
};

/// Concatenates window witnesses for the first num_pairs degree pairs
/// (ordered by |m| + |n|, then lexicographically), each rooted at the source
/// of the previous block.
PrefixOutcome build_aperiodic_prefix(const KGraph& g, VertexId v, int num_pairs,
                                     const Degree& degree_bound);
bool verify_prefix(const AperiodicPrefix& cert);

/// First `count` ordered pairs (m, n), m != n, by (|m| + |n|, lex).
std::vector<std::pair<Degree, Degree>> degree_pairs(int rank, int count);

// ---------------------------------------------------------------------------
// Whole-graph report.

enum class Condition { Star, Tau, Both };

struct CheckOptions {
    Degree pair_bound;
    Degree path_bound;
    Degree tau_bound;
    Condition condition = Condition::Both;
};

struct StarRecord {
    VertexId v;
    Degree m, n;
    Verdict verdict;
};

struct TauRecord {
    VertexId anchor;  // common source of alpha and beta
    Path alpha, beta;
    Verdict verdict;
};

struct VertexSummary {
    VertexId v = 0;
    std::size_t star_total = 0, star_witnessed = 0, star_refuted = 0, star_definite = 0;
    std::size_t tau_total = 0, tau_witnessed = 0, tau_refuted = 0, tau_definite = 0;
    bool periodic_suspect() const { return star_refuted + tau_refuted > 0; }
};

struct ConflictRecord {
    std::string detail;
};

struct AperiodicityReport {
    std::vector<StarRecord> star;
    std::vector<TauRecord> tau;
    std::vector<VertexSummary> vertices;
    /// A definite refutation on one side facing a witness whose theorem image
    /// contradicts it on the other. Must stay empty on fully searched
    /// instances.
    std::vector<ConflictRecord> conflicts;
};

/// Runs the window search for every vertex and unordered pair m != n within
/// pair_bound, and the separating-tau search for every distinct pair of paths
/// with equal range and source and degrees within pair_bound.
AperiodicityReport check_aperiodicity(const KGraph& g, const CheckOptions& opt);

/// Rank-1 only: every simple cycle must have an entry. Definite either way.
Verdict cycle_has_entry(const KGraph& g);

/// Simple cycles of a rank-1 graph as edge sequences, deduplicated up to
/// rotation, in deterministic order.
std::vector<std::vector<EdgeId>> simple_cycles(const KGraph& g);

}  // namespace kgraph
