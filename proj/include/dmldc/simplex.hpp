#pragma once

// Dense two-phase primal simplex with Bland's rule, templated on the scalar
// type (Rational for exact solves, double for float solves).
//
//   minimize  c.x   subject to  rows[i].x (>=|<=|=) rhs[i],  x >= 0.
//
// Duals follow c = A^T y + d with reduced costs d >= 0 at optimality;
// y_i >= 0 on >= rows, y_i <= 0 on <= rows, free on = rows.

#include "dmldc/kernels.hpp"
#include "dmldc/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace dmldc::simplex {

enum class Sense { Ge, Le, Eq };
enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct Problem {
    int num_vars = 0;
    std::vector<std::vector<T>> rows;
    std::vector<Sense> senses;
    std::vector<T> rhs;
    std::vector<T> cost;

    void add_row(std::vector<T> coeffs, Sense sense, T b) {
        rows.push_back(std::move(coeffs));
        senses.push_back(sense);
        rhs.push_back(std::move(b));
    }
};

template <class T>
struct Result {
    Status status = Status::Infeasible;
    std::vector<T> x;
    std::vector<T> y;
    std::vector<T> reduced;  // d_j for structural columns
    T value{};
    long iterations = 0;
};

namespace detail {

template <class T>
int sign(const T& v, double eps) {
    if constexpr (std::is_same_v<T, double>) {
        return v > eps ? 1 : (v < -eps ? -1 : 0);
    } else {
        (void)eps;
        return sgn(v);
    }
}

template <class T>
class Tableau {
public:
    Tableau(const Problem<T>& p, double eps) : eps_(eps), n_(p.num_vars) {
        const std::size_t m = p.rows.size();
        if (p.senses.size() != m || p.rhs.size() != m || static_cast<int>(p.cost.size()) != n_)
            throw std::invalid_argument("simplex: inconsistent problem dimensions");
        // Column layout: structural | surplus (one per >= row) | identity (one per row).
        std::size_t surplus = 0;
        flip_.assign(m, false);
        senses_ = p.senses;
        for (std::size_t i = 0; i < m; ++i) {
            if (sign(p.rhs[i], eps_) < 0) {
                flip_[i] = true;
                if (senses_[i] == Sense::Ge) senses_[i] = Sense::Le;
                else if (senses_[i] == Sense::Le) senses_[i] = Sense::Ge;
            }
            if (senses_[i] == Sense::Ge) ++surplus;
        }
        first_id_ = static_cast<std::size_t>(n_) + surplus;
        cols_ = first_id_ + m;
        rows_.assign(m, std::vector<T>(cols_ + 1, T(0)));
        basis_.assign(m, 0);
        artificial_.assign(cols_, false);
        std::size_t s = static_cast<std::size_t>(n_);
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<int>(p.rows[i].size()) != n_) throw std::invalid_argument("simplex: row length mismatch");
            auto& r = rows_[i];
            for (int j = 0; j < n_; ++j) r[j] = flip_[i] ? T(-p.rows[i][j]) : p.rows[i][j];
            r[cols_] = flip_[i] ? T(-p.rhs[i]) : p.rhs[i];
            if (senses_[i] == Sense::Ge) r[s++] = T(-1);
            r[first_id_ + i] = T(1);
            basis_[i] = first_id_ + i;
            artificial_[first_id_ + i] = senses_[i] != Sense::Le;
        }
        alive_.assign(m, true);
    }

    Result<T> run(const std::vector<T>& cost) {
        Result<T> res;
        // Phase 1: minimise the sum of artificials.
        std::vector<T> c1(cols_, T(0));
        bool any_art = false;
        for (std::size_t j = 0; j < cols_; ++j)
            if (artificial_[j]) c1[j] = T(1), any_art = true;
        if (any_art) {
            set_objective(c1);
            const Status st = iterate(/*allow_artificial=*/true, res.iterations);
            if (st != Status::Optimal) {
                res.status = st;
                return res;
            }
            if (sign(T(-obj_[cols_]), feas_eps()) > 0) {
                res.status = Status::Infeasible;
                return res;
            }
            drive_out_artificials();
        }
        // Phase 2.
        std::vector<T> c2(cols_, T(0));
        for (int j = 0; j < n_; ++j) c2[j] = cost[j];
        set_objective(c2);
        const Status st = iterate(/*allow_artificial=*/false, res.iterations);
        res.status = st;
        if (st != Status::Optimal) return res;

        res.x.assign(n_, T(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (alive_[i] && basis_[i] < static_cast<std::size_t>(n_)) res.x[basis_[i]] = rows_[i][cols_];
        res.value = T(0);
        for (int j = 0; j < n_; ++j) res.value += cost[j] * res.x[j];
        res.y.assign(rows_.size(), T(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!alive_[i]) continue;
            const T yi = -obj_[first_id_ + i];
            res.y[i] = flip_[i] ? T(-yi) : yi;
        }
        res.reduced.assign(obj_.begin(), obj_.begin() + n_);
        return res;
    }

private:
    double feas_eps() const {
        if constexpr (std::is_same_v<T, double>) return 1e-9;
        return 0.0;
    }

    void set_objective(const std::vector<T>& c) {
        obj_.assign(cols_ + 1, T(0));
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = c[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!alive_[i]) continue;
            const T cb = c[basis_[i]];
            if (sign(cb, 0.0) == 0) continue;
            row_axpy(T(-cb), rows_[i], obj_);
        }
    }

    static void row_axpy(const T& alpha, const std::vector<T>& x, std::vector<T>& y) {
        if constexpr (std::is_same_v<T, double>) {
            kernels::axpy(alpha, std::span<const double>(x), std::span<double>(y));
        } else {
            for (std::size_t j = 0; j < x.size(); ++j)
                if (sgn(x[j]) != 0) y[j] += alpha * x[j];
        }
    }

    void pivot(std::size_t r, std::size_t s) {
        auto& pr = rows_[r];
        const T inv = T(1) / pr[s];
        for (auto& v : pr) v *= inv;
        pr[s] = T(1);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || !alive_[i]) continue;
            const T f = rows_[i][s];
            if (sign(f, 0.0) == 0) continue;
            row_axpy(T(-f), pr, rows_[i]);
            rows_[i][s] = T(0);
        }
        const T f = obj_[s];
        if (sign(f, 0.0) != 0) {
            row_axpy(T(-f), pr, obj_);
            obj_[s] = T(0);
        }
        basis_[r] = s;
    }

    Status iterate(bool allow_artificial, long& iterations) {
        const long limit = 200000 + 50L * static_cast<long>(cols_ * rows_.size());
        for (;;) {
            if (++iterations > limit) return Status::IterationLimit;
            std::size_t s = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allow_artificial && artificial_[j]) continue;
                if (sign(obj_[j], eps_) < 0) {
                    s = j;
                    break;
                }
            }
            if (s == cols_) return Status::Optimal;
            std::size_t r = rows_.size();
            T best{};
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (!alive_[i] || sign(rows_[i][s], eps_) <= 0) continue;
                const T ratio = rows_[i][cols_] / rows_[i][s];
                if (r == rows_.size()) {
                    r = i, best = ratio;
                    continue;
                }
                const int cmp = sign(T(ratio - best), eps_);
                if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[r])) r = i, best = ratio;
            }
            if (r == rows_.size()) return Status::Unbounded;
            pivot(r, s);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!alive_[i] || !artificial_[basis_[i]]) continue;
            std::size_t s = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (artificial_[j]) continue;
                if (sign(rows_[i][j], eps_) != 0) {
                    s = j;
                    break;
                }
            }
            if (s == cols_) alive_[i] = false;  // redundant equality
            else pivot(i, s);
        }
    }

    double eps_;
    int n_;
    std::size_t first_id_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<T>> rows_;
    std::vector<T> obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> artificial_;
    std::vector<bool> flip_;
    std::vector<bool> alive_;
    std::vector<Sense> senses_;
};

}  // namespace detail

/// `eps` is the pivoting tolerance for double; ignored for exact types.
template <class T>
Result<T> solve(const Problem<T>& problem, double eps = 1e-11) {
    detail::Tableau<T> tab(problem, eps);
    return tab.run(problem.cost);
}

}  // namespace dmldc::simplex
