#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace kgraph {

/// Element of N^k. The rank is fixed at construction and all entries are >= 0.
/// Degrees are partially ordered coordinatewise; join and meet are the
/// coordinatewise max and min.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::vector<int> coords);
    Degree(std::initializer_list<int> coords);

    static Degree zero(int rank);
    /// Standard basis vector e_color, color in 1..rank.
    static Degree unit(int rank, int color);

    int rank() const { return static_cast<int>(coords_.size()); }
    int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    /// |m| = sum of entries.
    int total() const;
    bool is_zero() const;

    const std::vector<int>& coords() const { return coords_; }

    bool operator==(const Degree&) const = default;

    /// Comma-joined entries with no spaces, e.g. "1,0".
    std::string str() const;

private:
    std::vector<int> coords_;
};

Degree join(const Degree& m, const Degree& n);
Degree meet(const Degree& m, const Degree& n);
Degree plus(const Degree& m, const Degree& n);
/// Requires n <= m.
Degree minus(const Degree& m, const Degree& n);
/// Coordinatewise m <= n.
bool leq(const Degree& m, const Degree& n);
/// Arbitrary total order (by total, then lexicographic) for deterministic
/// container ordering and search schedules.
bool degree_less(const Degree& m, const Degree& n);

/// Parses "1,0" style text. Throws std::invalid_argument on malformed input.
Degree parse_degree(const std::string& text);

/// All d <= bound, sorted by degree_less.
std::vector<Degree> degrees_upto(const Degree& bound);

}  // namespace kgraph

template <>
struct std::hash<kgraph::Degree> {
    std::size_t operator()(const kgraph::Degree& d) const noexcept;
};
