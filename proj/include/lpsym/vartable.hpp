#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpsym {

enum class VarRole { Base, Dependent, FirstDeriv, SecondDeriv, ThirdDeriv, Cofactor, Unknown };

// Declared variable universe for one symbolic computation. Fixed layout:
// x^1..x^n, u, u_1..u_n, u_{ij} (i<=j), u_{ijk} (i<=j<=k), U^{ij} (i<=j),
// then the unknown ansatz coefficients. Derivative-symbol indices are
// canonicalized at entry, so u_{ij} and u_{ji} share one slot.
class VarTable {
public:
    VarTable(int n, std::vector<std::string> unknowns)
        : n_(n) {
        if (n < 1) throw std::invalid_argument("dimension must be >= 1");
        for (int i = 0; i < n; ++i) push("x" + std::to_string(i + 1), VarRole::Base);
        push("u", VarRole::Dependent);
        for (int i = 0; i < n; ++i) push("u_" + std::to_string(i + 1), VarRole::FirstDeriv);
        base2_ = int(vars_.size());
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                pair_slot_[{i, j}] = int(vars_.size());
                push("u_" + std::to_string(i + 1) + std::to_string(j + 1), VarRole::SecondDeriv);
            }
        base3_ = int(vars_.size());
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k) {
                    triple_slot_[{{i, j, k}}] = int(vars_.size());
                    push("u_" + std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1),
                         VarRole::ThirdDeriv);
                }
        baseU_ = int(vars_.size());
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                cof_slot_[{i, j}] = int(vars_.size());
                push("U_" + std::to_string(i + 1) + std::to_string(j + 1), VarRole::Cofactor);
            }
        base_unknown_ = int(vars_.size());
        for (auto& name : unknowns) push(std::move(name), VarRole::Unknown);
        for (size_t a = 0; a < vars_.size(); ++a)
            for (size_t b = a + 1; b < vars_.size(); ++b)
                if (vars_[a].name == vars_[b].name)
                    throw std::invalid_argument("duplicate variable name: " + vars_[a].name);
    }

    int n() const { return n_; }
    int size() const { return int(vars_.size()); }

    int x(int i) const { return check_axis(i); }
    int u() const { return n_; }
    int du(int i) const { return n_ + 1 + check_axis(i); }
    int d2u(int i, int j) const { return pair_slot_.at(ordered2(i, j)); }
    int d3u(int i, int j, int k) const { return triple_slot_.at(ordered3(i, j, k)); }
    int cof(int i, int j) const { return cof_slot_.at(ordered2(i, j)); }
    int unknown(int m) const {
        if (m < 0 || m >= unknown_count()) throw std::out_of_range("unknown index");
        return base_unknown_ + m;
    }
    int unknown_count() const { return int(vars_.size()) - base_unknown_; }
    int unknown_base() const { return base_unknown_; }

    VarRole role(int idx) const { return vars_.at(idx).role; }
    const std::string& name(int idx) const { return vars_.at(idx).name; }
    bool is_role(int idx, VarRole r) const { return vars_.at(idx).role == r; }

    int find(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (vars_[i].name == name) return i;
        throw std::invalid_argument("unknown variable: " + name);
    }

private:
    struct Var {
        std::string name;
        VarRole role;
    };

    int check_axis(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("axis index");
        return i;
    }
    static std::pair<int, int> ordered2(int i, int j) { return i <= j ? std::pair{i, j} : std::pair{j, i}; }
    static std::array<int, 3> ordered3(int i, int j, int k) {
        std::array<int, 3> t{i, j, k};
        std::sort(t.begin(), t.end());
        return t;
    }
    void push(std::string name, VarRole role) { vars_.push_back({std::move(name), role}); }

    int n_;
    std::vector<Var> vars_;
    int base2_ = 0, base3_ = 0, baseU_ = 0, base_unknown_ = 0;
    std::map<std::pair<int, int>, int> pair_slot_;
    std::map<std::array<int, 3>, int> triple_slot_;
    std::map<std::pair<int, int>, int> cof_slot_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_jet_table(int n, std::vector<std::string> unknowns = {}) {
    return std::make_shared<const VarTable>(n, std::move(unknowns));
}

}  // namespace lpsym
