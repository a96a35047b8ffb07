#include "kgraph/degree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kgraph {

namespace {

void check_same_rank(const Degree& m, const Degree& n) {
    if (m.rank() != n.rank())
        throw std::invalid_argument("degree rank mismatch: " + m.str() + " vs " + n.str());
}

}  // namespace

Degree::Degree(std::vector<int> coords) : coords_(std::move(coords)) {
    for (int c : coords_)
        if (c < 0) throw std::invalid_argument("negative degree entry");
}

Degree::Degree(std::initializer_list<int> coords) : Degree(std::vector<int>(coords)) {}

Degree Degree::zero(int rank) {
    return Degree(std::vector<int>(static_cast<std::size_t>(rank), 0));
}

Degree Degree::unit(int rank, int color) {
    if (color < 1 || color > rank) throw std::invalid_argument("color out of range");
    std::vector<int> c(static_cast<std::size_t>(rank), 0);
    c[static_cast<std::size_t>(color - 1)] = 1;
    return Degree(std::move(c));
}

int Degree::total() const {
    return std::accumulate(coords_.begin(), coords_.end(), 0);
}

bool Degree::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
}

std::string Degree::str() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coords_[i]);
    }
    return out;
}

Degree join(const Degree& m, const Degree& n) {
    check_same_rank(m, n);
    std::vector<int> c(m.coords());
    for (int i = 0; i < n.rank(); ++i) c[static_cast<std::size_t>(i)] = std::max(c[static_cast<std::size_t>(i)], n[i]);
    return Degree(std::move(c));
}

Degree meet(const Degree& m, const Degree& n) {
    check_same_rank(m, n);
    std::vector<int> c(m.coords());
    for (int i = 0; i < n.rank(); ++i) c[static_cast<std::size_t>(i)] = std::min(c[static_cast<std::size_t>(i)], n[i]);
    return Degree(std::move(c));
}

Degree plus(const Degree& m, const Degree& n) {
    check_same_rank(m, n);
    std::vector<int> c(m.coords());
    for (int i = 0; i < n.rank(); ++i) c[static_cast<std::size_t>(i)] += n[i];
    return Degree(std::move(c));
}

Degree minus(const Degree& m, const Degree& n) {
    check_same_rank(m, n);
    if (!leq(n, m))
        throw std::invalid_argument("degree subtraction underflow: " + m.str() + " - " + n.str());
    std::vector<int> c(m.coords());
    for (int i = 0; i < n.rank(); ++i) c[static_cast<std::size_t>(i)] -= n[i];
    return Degree(std::move(c));
}

bool leq(const Degree& m, const Degree& n) {
    check_same_rank(m, n);
    for (int i = 0; i < m.rank(); ++i)
        if (m[i] > n[i]) return false;
    return true;
}

bool degree_less(const Degree& m, const Degree& n) {
    if (m.total() != n.total()) return m.total() < n.total();
    return m.coords() < n.coords();
}

Degree parse_degree(const std::string& text) {
    std::vector<int> coords;
    std::size_t pos = 0;
    if (text.empty()) throw std::invalid_argument("empty degree string");
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed degree string: \"" + text + "\"");
        coords.push_back(std::stoi(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Degree(std::move(coords));
}

std::vector<Degree> degrees_upto(const Degree& bound) {
    std::vector<Degree> out;
    std::vector<int> cur(static_cast<std::size_t>(bound.rank()), 0);
    while (true) {
        out.emplace_back(cur);
        int i = bound.rank() - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == bound[i]) {
            cur[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end(), degree_less);
    return out;
}

}  // namespace kgraph

std::size_t std::hash<kgraph::Degree>::operator()(const kgraph::Degree& d) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int c : d.coords()) h = h * 1099511628211ULL + static_cast<std::size_t>(c) + 1;
    return h;
}
