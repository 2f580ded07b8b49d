#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "lpsym/rat.hpp"

namespace lpsym {

// Dense matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }

    static RatMatrix from(const std::vector<std::vector<Rat>>& rows) {
        int r = int(rows.size());
        int c = r ? int(rows[0].size()) : 0;
        RatMatrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (int(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

namespace detail {

// Sparse integer row: (column, coefficient) sorted by column, no zeros.
using IntRow = std::vector<std::pair<int, mpz_class>>;

inline void content_normalize(IntRow& r) {
    if (r.empty()) return;
    mpz_class g = 0;
    for (auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1)
        for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline IntRow combine(const IntRow& a, const mpz_class& ka, const IntRow& b, const mpz_class& kb) {
    IntRow r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            r.emplace_back(a[i].first, ka * a[i].second);
            ++i;
        } else if (a[i].first > b[j].first) {
            r.emplace_back(b[j].first, kb * b[j].second);
            ++j;
        } else {
            mpz_class v = ka * a[i].second + kb * b[j].second;
            if (v != 0) r.emplace_back(a[i].first, std::move(v));
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) r.emplace_back(a[i].first, ka * a[i].second);
    for (; j < b.size(); ++j) r.emplace_back(b[j].first, kb * b[j].second);
    return r;
}

inline IntRow row_from_rat(const std::vector<std::pair<int, Rat>>& sparse) {
    mpz_class lcm = 1;
    for (auto& [c, q] : sparse)
        if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    IntRow r;
    for (auto& [c, q] : sparse) {
        if (q == 0) continue;
        mpz_class v = q.get_num() * (lcm / q.get_den());
        r.emplace_back(c, std::move(v));
    }
    content_normalize(r);
    return r;
}

// Integer-preserving incremental row echelon: rows are combined by exact
// cross-multiplication and reduced by their content after every step, so
// all arithmetic stays in Z and entry growth is kept in check.
class IntEchelon {
public:
    explicit IntEchelon(int cols) : cols_(cols) {}

    // Reduces r against the current pivots and installs the remainder as a
    // new pivot when nonzero. Returns true if the rank grew.
    bool add_row(IntRow r) {
        content_normalize(r);
        while (!r.empty()) {
            int lead = r.front().first;
            auto it = pivot_.find(lead);
            if (it == pivot_.end()) {
                if (r.front().second < 0)
                    for (auto& [c, v] : r) v = -v;
                pivot_.emplace(lead, std::move(r));
                return true;
            }
            const IntRow& p = it->second;
            r = combine(r, p.front().second, p, -r.front().second);
            content_normalize(r);
        }
        return false;
    }

    int rank() const { return int(pivot_.size()); }
    int cols() const { return cols_; }

    // Clears entries above every pivot (integer reduced row-echelon form).
    void to_rref() {
        for (auto it = pivot_.rbegin(); it != pivot_.rend(); ++it) {
            const int col = it->first;
            for (auto jt = pivot_.begin(); jt->first != col; ++jt) {
                IntRow& row = jt->second;
                mpz_class e = 0;
                for (auto& [c, v] : row)
                    if (c == col) {
                        e = v;
                        break;
                    }
                if (e == 0) continue;
                row = combine(row, it->second.front().second, it->second, -e);
                content_normalize(row);
                if (row.front().second < 0)
                    for (auto& [c, v] : row) v = -v;
            }
        }
    }

    std::vector<int> pivot_cols() const {
        std::vector<int> p;
        p.reserve(pivot_.size());
        for (auto& [c, row] : pivot_) p.push_back(c);
        return p;
    }

    // Rational RREF rows (unit leading coefficient), sorted by pivot column.
    std::vector<std::vector<Rat>> rref_rows_dense() const {
        std::vector<std::vector<Rat>> out;
        for (auto& [c, row] : pivot_) {
            std::vector<Rat> v(cols_, Rat(0));
            Rat lead(row.front().second);
            for (auto& [col, val] : row) {
                Rat q(val);
                q /= lead;
                v[col] = q;
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    // Nullspace basis in the canonical free-column construction: one vector
    // per free column f with v[f] = 1, scaled to primitive integer entries.
    std::vector<std::vector<Rat>> nullspace_basis() const {
        std::vector<bool> is_pivot(cols_, false);
        for (auto& [c, row] : pivot_) is_pivot[c] = true;
        std::vector<std::vector<Rat>> basis;
        for (int f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[f] = 1;
            mpz_class lcm = 1;
            for (auto& [c, row] : pivot_) {
                mpz_class e = 0;
                for (auto& [col, val] : row)
                    if (col == f) {
                        e = val;
                        break;
                    }
                if (e == 0) continue;
                Rat q(e);
                q /= Rat(row.front().second);
                v[c] = -q;
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v[c].get_den_mpz_t());
            }
            if (lcm != 1)
                for (auto& q : v) q *= Rat(lcm);
            mpz_class g = 0;
            for (auto& q : v)
                if (q != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
            if (g > 1)
                for (auto& q : v) q /= Rat(g);
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    int cols_;
    std::map<int, IntRow> pivot_;  // leading column -> primitive row
};

inline IntRow dense_to_row(const std::vector<Rat>& v) {
    std::vector<std::pair<int, Rat>> sp;
    for (int i = 0; i < int(v.size()); ++i)
        if (v[i] != 0) sp.emplace_back(i, v[i]);
    return row_from_rat(sp);
}

}  // namespace detail

inline int rank(const RatMatrix& m) {
    detail::IntEchelon ech(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::pair<int, Rat>> sp;
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) sp.emplace_back(j, m.at(i, j));
        ech.add_row(detail::row_from_rat(sp));
    }
    return ech.rank();
}

// Exact nullspace basis; the returned vectors are primitive integer vectors,
// linearly independent, and their count is cols - rank.
inline std::vector<std::vector<Rat>> nullspace(const RatMatrix& m) {
    detail::IntEchelon ech(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::pair<int, Rat>> sp;
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) sp.emplace_back(j, m.at(i, j));
        ech.add_row(detail::row_from_rat(sp));
    }
    ech.to_rref();
    return ech.nullspace_basis();
}

// Primitive integer scaling: clears denominators, divides by the gcd and
// makes the first nonzero entry positive.
inline std::vector<Rat> primitive_scale(std::vector<Rat> v) {
    mpz_class lcm = 1;
    for (auto& q : v)
        if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    if (lcm != 1)
        for (auto& q : v) q *= Rat(lcm);
    mpz_class g = 0;
    for (auto& q : v)
        if (q != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    if (g > 1)
        for (auto& q : v) q /= Rat(g);
    for (auto& q : v) {
        if (q == 0) continue;
        if (q < 0)
            for (auto& w : v) w = -w;
        break;
    }
    return v;
}

// Canonical spanning set: reduced row echelon of the given vectors, each row
// scaled to primitive integers with positive leading entry, sorted by pivot.
inline std::vector<std::vector<Rat>> canonical_span(const std::vector<std::vector<Rat>>& vectors, int dim) {
    detail::IntEchelon ech(dim);
    for (auto& v : vectors) ech.add_row(detail::dense_to_row(v));
    ech.to_rref();
    std::vector<std::vector<Rat>> out;
    for (auto& row : ech.rref_rows_dense()) out.push_back(primitive_scale(row));
    return out;
}

inline bool in_span(const std::vector<std::vector<Rat>>& basis, const std::vector<Rat>& target) {
    if (basis.empty()) {
        for (auto& q : target)
            if (q != 0) return false;
        return true;
    }
    int dim = int(basis[0].size());
    detail::IntEchelon ech(dim);
    for (auto& v : basis) ech.add_row(detail::dense_to_row(v));
    int r = ech.rank();
    ech.add_row(detail::dense_to_row(target));
    return ech.rank() == r;
}

}  // namespace lpsym
