#pragma once

#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpsym/rat.hpp"
#include "lpsym/vartable.hpp"

namespace lpsym {

// Sparse monomial: (variable index, exponent) pairs sorted by index,
// exponents strictly positive, total degree cached.
struct Monomial {
    std::vector<std::pair<int, int>> pw;
    int degree = 0;

    static Monomial one() { return {}; }

    static Monomial var(int idx, int exp = 1) {
        Monomial m;
        if (exp < 0) throw std::invalid_argument("negative exponent");
        if (exp > 0) {
            m.pw.emplace_back(idx, exp);
            m.degree = exp;
        }
        return m;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        r.pw.reserve(pw.size() + o.pw.size());
        size_t a = 0, b = 0;
        while (a < pw.size() && b < o.pw.size()) {
            if (pw[a].first < o.pw[b].first)
                r.pw.push_back(pw[a++]);
            else if (pw[a].first > o.pw[b].first)
                r.pw.push_back(o.pw[b++]);
            else {
                r.pw.emplace_back(pw[a].first, pw[a].second + o.pw[b].second);
                ++a, ++b;
            }
        }
        for (; a < pw.size(); ++a) r.pw.push_back(pw[a]);
        for (; b < o.pw.size(); ++b) r.pw.push_back(o.pw[b]);
        r.degree = degree + o.degree;
        return r;
    }

    int exponent(int idx) const {
        for (auto& [v, e] : pw)
            if (v == idx) return e;
        return 0;
    }

    bool operator==(const Monomial& o) const { return degree == o.degree && pw == o.pw; }
};

// Graded lexicographic order, leading monomial first: higher total degree
// precedes, ties broken by larger exponent on the earliest variable.
struct MonoOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree != b.degree) return a.degree > b.degree;
        size_t i = 0, j = 0;
        while (i < a.pw.size() && j < b.pw.size()) {
            if (a.pw[i].first != b.pw[j].first) return a.pw[i].first < b.pw[j].first;
            if (a.pw[i].second != b.pw[j].second) return a.pw[i].second > b.pw[j].second;
            ++i, ++j;
        }
        return i < a.pw.size();
    }
};

// Sparse multivariate polynomial with exact rational coefficients over a
// shared variable table. No zero coefficients are stored; two polynomials
// are equal iff their term maps are equal.
class MPoly {
public:
    using TermMap = std::map<Monomial, Rat, MonoOrder>;

    explicit MPoly(VarTablePtr tbl) : tbl_(std::move(tbl)) {
        if (!tbl_) throw std::invalid_argument("null variable table");
    }

    static MPoly constant(VarTablePtr tbl, Rat c) {
        MPoly p(std::move(tbl));
        p.add_term(Monomial::one(), std::move(c));
        return p;
    }

    static MPoly var(VarTablePtr tbl, int idx, int exp = 1) {
        if (idx < 0 || idx >= tbl->size()) throw std::invalid_argument("variable index out of range");
        MPoly p(std::move(tbl));
        p.add_term(Monomial::var(idx, exp), Rat(1));
        return p;
    }

    static MPoly term(VarTablePtr tbl, Monomial m, Rat c) {
        MPoly p(std::move(tbl));
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    const VarTablePtr& table() const { return tbl_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int term_count() const { return int(t_.size()); }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.degree);
        return d;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = t_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        check_table(o);
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_table(o);
        for (auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    MPoly operator-() const {
        MPoly r(tbl_);
        for (auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_table(b);
        MPoly r(a.tbl_);
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const Rat& c) const {
        MPoly r(tbl_);
        if (c == 0) return r;
        for (auto& [m, k] : t_) r.t_.emplace(m, c * k);
        return r;
    }

    MPoly pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative polynomial power");
        MPoly r = constant(tbl_, Rat(1));
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    // Exact formal partial derivative.
    MPoly diff(int var) const {
        if (var < 0 || var >= tbl_->size()) throw std::invalid_argument("unknown variable");
        MPoly r(tbl_);
        for (auto& [m, c] : t_) {
            int e = m.exponent(var);
            if (e == 0) continue;
            Monomial d;
            d.pw.reserve(m.pw.size());
            for (auto& [v, k] : m.pw) {
                int nk = (v == var) ? k - 1 : k;
                if (nk > 0) d.pw.emplace_back(v, nk);
            }
            d.degree = m.degree - 1;
            r.add_term(d, c * e);
        }
        return r;
    }

    Rat eval(std::span<const Rat> point) const {
        if (int(point.size()) != tbl_->size()) throw std::invalid_argument("assignment size mismatch");
        Rat acc(0);
        for (auto& [m, c] : t_) {
            Rat v = c;
            for (auto& [var, e] : m.pw) v *= rat_pow(point[var], e);
            acc += v;
        }
        return acc;
    }

    double eval_double(std::span<const double> point) const {
        if (int(point.size()) != tbl_->size()) throw std::invalid_argument("assignment size mismatch");
        double acc = 0;
        for (auto& [m, c] : t_) {
            double v = rat_double(c);
            for (auto& [var, e] : m.pw)
                for (int k = 0; k < e; ++k) v *= point[var];
            acc += v;
        }
        return acc;
    }

    // Substitutes exact values for the given variables.
    MPoly subst(const std::map<int, Rat>& values) const {
        MPoly r(tbl_);
        for (auto& [m, c] : t_) {
            Rat coef = c;
            Monomial keep;
            for (auto& [v, e] : m.pw) {
                if (auto it = values.find(v); it != values.end()) {
                    coef *= rat_pow(it->second, e);
                } else {
                    keep.pw.emplace_back(v, e);
                    keep.degree += e;
                }
            }
            r.add_term(keep, coef);
        }
        return r;
    }

    // Splits into buckets keyed by the monomial part over the flagged
    // variables; summing key * value over the map reconstructs the input.
    std::map<Monomial, MPoly, MonoOrder> split(const std::vector<bool>& in_subset) const {
        if (int(in_subset.size()) != tbl_->size()) throw std::invalid_argument("subset size mismatch");
        std::map<Monomial, MPoly, MonoOrder> out;
        for (auto& [m, c] : t_) {
            Monomial key, rest;
            for (auto& [v, e] : m.pw) {
                auto& dst = in_subset[v] ? key : rest;
                dst.pw.emplace_back(v, e);
                dst.degree += e;
            }
            auto it = out.find(key);
            if (it == out.end()) it = out.emplace(key, MPoly(tbl_)).first;
            it->second.add_term(rest, c);
        }
        return out;
    }

    int degree_in(int var) const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.exponent(var));
        return d;
    }

    int degree_in_role(VarRole role) const {
        int d = 0;
        for (auto& [m, c] : t_) {
            int s = 0;
            for (auto& [v, e] : m.pw)
                if (tbl_->role(v) == role) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    bool depends_on_role(VarRole role) const { return degree_in_role(role) > 0; }

    bool operator==(const MPoly& o) const { return tbl_ == o.tbl_ && t_ == o.t_; }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : t_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool coef_one = (a == 1);
            if (!coef_one || m.pw.empty()) os << a.get_str();
            bool lead = coef_one && !m.pw.empty() ? true : false;
            for (auto& [v, e] : m.pw) {
                if (!lead) os << "*";
                lead = false;
                os << tbl_->name(v);
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    void check_table(const MPoly& o) const {
        if (tbl_ != o.tbl_) throw std::invalid_argument("incompatible variable tables");
    }

    VarTablePtr tbl_;
    TermMap t_;
};

}  // namespace lpsym
