#include <algorithm>
#include <cmath>
#include <string>

#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"

namespace unirec {

namespace {

void require_pair(IndexPair p, std::size_t n, const char* what) {
    if (p.first >= n || p.second >= n) {
        throw DomainError(std::string(what) + " index out of range");
    }
    if (p.first == p.second) {
        throw DomainError(std::string(what) + " indices must differ, got " + std::to_string(p.first) +
                          " twice");
    }
}

}  // namespace

Plaquette plaquette(const ComplexMatrix& x, IndexPair rows, IndexPair cols) {
    if (!x.is_square()) {
        throw ShapeError("plaquette: matrix is not square");
    }
    require_pair(rows, x.rows(), "row");
    require_pair(cols, x.cols(), "column");
    const auto [a, b] = rows;
    const auto [j, k] = cols;
    const Complex v = x(a, j) * x(b, k) * std::conj(x(a, k)) * std::conj(x(b, j));
    return {rows, cols, v};
}

std::vector<IndexPair> ordered_pairs(std::size_t n) {
    std::vector<IndexPair> out;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            out.push_back({a, b});
        }
    }
    return out;
}

PlaquetteTable::PlaquetteTable(std::size_t n, std::vector<Plaquette> entries)
    : n_(n), entries_(std::move(entries)) {
    const std::size_t pairs = n * (n - 1) / 2;
    if (entries_.size() != pairs * pairs) {
        throw ShapeError("plaquette table for n = " + std::to_string(n) + " needs " +
                         std::to_string(pairs * pairs) + " entries");
    }
}

std::size_t PlaquetteTable::index_of(IndexPair rows, IndexPair cols) const {
    // Position of the canonical pair (a<b) in the lexicographic enumeration.
    auto pair_index = [this](IndexPair p) {
        const std::size_t a = p.first;
        const std::size_t b = p.second;
        return a * (2 * n_ - a - 1) / 2 + (b - a - 1);
    };
    const std::size_t pairs = n_ * (n_ - 1) / 2;
    return pair_index(rows) * pairs + pair_index(cols);
}

Complex PlaquetteTable::at(IndexPair rows, IndexPair cols) const {
    require_pair(rows, n_, "row");
    require_pair(cols, n_, "column");
    bool conjugate = false;
    if (rows.first > rows.second) {
        rows = rows.swapped();
        conjugate = !conjugate;
    }
    if (cols.first > cols.second) {
        cols = cols.swapped();
        conjugate = !conjugate;
    }
    const Complex v = entries_[index_of(rows, cols)].value;
    return conjugate ? std::conj(v) : v;
}

double PlaquetteTable::max_diff(const PlaquetteTable& other) const {
    if (other.n_ != n_) {
        throw ShapeError("plaquette tables of different dimension");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        m = std::max(m, std::abs(entries_[i].value - other.entries_[i].value));
    }
    return m;
}

PlaquetteTable plaquette_table(const ComplexMatrix& x) {
    if (!x.is_square()) {
        throw ShapeError("plaquette_table: matrix is not square");
    }
    const auto pairs = ordered_pairs(x.rows());
    std::vector<Plaquette> entries;
    entries.reserve(pairs.size() * pairs.size());
    for (const auto& r : pairs) {
        for (const auto& c : pairs) {
            entries.push_back(plaquette(x, r, c));
        }
    }
    return PlaquetteTable(x.rows(), std::move(entries));
}

SextetReduction reduce_sextet(const ComplexMatrix& x, std::array<std::size_t, 3> rows,
                              std::array<std::size_t, 3> cols, double pivot_tol) {
    const auto [alpha, beta, gamma] = rows;
    const auto [j, k, l] = cols;
    const auto first = plaquette(x, {alpha, beta}, {j, k});
    const auto second = plaquette(x, {beta, gamma}, {j, l});
    const double pivot = std::abs(x(beta, j));
    if (!(pivot > pivot_tol)) {
        throw PreconditionError("reduce_sextet: pivot |V(" + std::to_string(beta) + "," + std::to_string(j) +
                                ")| = " + std::to_string(pivot) + " vanishes");
    }

    SextetReduction r;
    r.lhs = (x(alpha, j) * x(beta, k) * x(gamma, l) * std::conj(x(alpha, k)) * std::conj(x(beta, l)) *
             std::conj(x(gamma, j)))
                .imag();
    r.rhs = (first.im() * second.re() + first.re() * second.im()) / (pivot * pivot);
    return r;
}

std::size_t count_independent_phases(std::size_t n) {
    if (n == 0) {
        throw DomainError("count_independent_phases: n must be positive");
    }
    return n < 3 ? 0 : (n - 1) * (n - 2) / 2;
}

std::vector<UnitarityPolygon> triangle_areas(const ComplexMatrix& x, double zero_tol) {
    if (!x.is_square()) {
        throw ShapeError("triangle_areas: matrix is not square");
    }
    const std::size_t n = x.rows();
    std::vector<UnitarityPolygon> out;

    auto polygon = [&](UnitarityPolygon::Kind kind, IndexPair p) {
        UnitarityPolygon poly{kind, p, 0, 0.0};
        Complex vertex = 0.0;
        double twice_area = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const bool row = kind == UnitarityPolygon::Kind::Row;
            const Complex u = row ? x(p.first, t) : x(t, p.first);
            const Complex v = row ? x(p.second, t) : x(t, p.second);
            const Complex side = u * std::conj(v);
            if (std::abs(u) > zero_tol && std::abs(v) > zero_tol) {
                ++poly.sides;
            }
            const Complex next = vertex + side;
            twice_area += (std::conj(vertex) * next).imag();
            vertex = next;
        }
        poly.area = std::abs(twice_area) / 2.0;
        out.push_back(poly);
    };

    for (const auto& p : ordered_pairs(n)) {
        polygon(UnitarityPolygon::Kind::Row, p);
    }
    for (const auto& p : ordered_pairs(n)) {
        polygon(UnitarityPolygon::Kind::Column, p);
    }
    return out;
}

}  // namespace unirec
