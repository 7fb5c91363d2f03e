#include <algorithm>

#include "bfl/error.hpp"
#include "lp_internal.hpp"

namespace bfl {

namespace detail {

namespace {

i128 mpz_to_i128(const mpz_class& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 126) throw OverflowError("LP value exceeds 128-bit range");
    mpz_class a = abs(z);
    std::size_t count = 0;
    unsigned char bytes[16] = {0};
    mpz_export(bytes, &count, -1, 1, 0, 0, a.get_mpz_t());
    i128 v = 0;
    for (std::size_t k = count; k-- > 0;) v = (v << 8) | bytes[k];
    return sgn(z) < 0 ? -v : v;
}

mpz_class i128_to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 a = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    unsigned char bytes[16];
    for (int k = 0; k < 16; ++k) {
        bytes[k] = static_cast<unsigned char>(a & 0xff);
        a >>= 8;
    }
    mpz_class z;
    mpz_import(z.get_mpz_t(), 16, -1, 1, 0, 0, bytes);
    return neg ? mpz_class(-z) : z;
}

class Tableau {
public:
    Tableau(const LinearProgram& lp) : m_(lp.rows), cols_(lp.cols), width_(lp.cols + lp.rows) {
        t_.assign(m_, std::vector<mpq_class>(width_ + 1));
        for (int r = 0; r < m_; ++r) {
            for (int j = 0; j < cols_; ++j) t_[r][j] = static_cast<long>(lp.A[r][j]);
            t_[r][cols_ + r] = 1;
            t_[r][width_] = static_cast<long>(lp.b[r]);
        }
        basis_.resize(m_);
        for (int r = 0; r < m_; ++r) basis_[r] = cols_ + r;
        obj_.assign(width_ + 1, 0);
    }

    // Rebuilds reduced costs d_j = c_B B^{-1} A_j - c_j for the given costs.
    void set_objective(const std::vector<mpq_class>& cost) {
        cost_ = cost;
        for (int j = 0; j <= width_; ++j) obj_[j] = j < width_ ? mpq_class(-cost[j]) : mpq_class(0);
        for (int r = 0; r < m_; ++r) {
            const mpq_class& cb = cost[basis_[r]];
            if (cb == 0) continue;
            for (int j = 0; j <= width_; ++j)
                if (t_[r][j] != 0) obj_[j] += cb * t_[r][j];
        }
    }

    // Runs Bland's rule over columns [0, limit).  Returns false if unbounded.
    bool optimise(int limit, std::uint64_t& pivots, std::uint64_t max_pivots) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            mpq_class best;
            for (int r = 0; r < m_; ++r) {
                if (t_[r][enter] <= 0) continue;
                mpq_class ratio = t_[r][width_] / t_[r][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
            if (++pivots > max_pivots) throw BudgetExceeded("simplex pivot budget exceeded");
        }
    }

    void pivot(int pr, int pc) {
        mpq_class inv = 1 / t_[pr][pc];
        std::vector<int> nz;
        for (int j = 0; j <= width_; ++j) {
            if (t_[pr][j] == 0) continue;
            t_[pr][j] *= inv;
            nz.push_back(j);
        }
        auto eliminate = [&](std::vector<mpq_class>& row) {
            if (row[pc] == 0) return;
            mpq_class factor = row[pc];
            for (int j : nz) row[j] -= factor * t_[pr][j];
        };
        for (int r = 0; r < m_; ++r)
            if (r != pr) eliminate(t_[r]);
        eliminate(obj_);
        basis_[pr] = pc;
    }

    int rows() const { return m_; }
    int cols() const { return cols_; }
    int width() const { return width_; }
    int basis(int r) const { return basis_[r]; }
    const mpq_class& rhs(int r) const { return t_[r][width_]; }
    const mpq_class& entry(int r, int j) const { return t_[r][j]; }
    const mpq_class& reduced(int j) const { return obj_[j]; }
    const mpq_class& value() const { return obj_[width_]; }

private:
    int m_, cols_, width_;
    std::vector<std::vector<mpq_class>> t_;
    std::vector<int> basis_;
    std::vector<mpq_class> obj_;
    std::vector<mpq_class> cost_;
};

}  // namespace

Rational to_rational(const mpq_class& q) {
    return Rational(mpz_to_i128(q.get_num()), mpz_to_i128(q.get_den()));
}

mpq_class to_mpq(const Rational& r) {
    mpq_class q(i128_to_mpz(r.num()), i128_to_mpz(r.den()));
    q.canonicalize();
    return q;
}

MpqLpResult solve_lp_mpq(const LinearProgram& lp, const LpOptions& opts) {
    if (lp.rows < 1 || lp.cols < 1) throw ValidationError("LP needs at least one row and column");
    if (static_cast<int>(lp.A.size()) != lp.rows || static_cast<int>(lp.b.size()) != lp.rows ||
        static_cast<int>(lp.c.size()) != lp.cols)
        throw ValidationError("LP dimensions are inconsistent");
    for (const auto& row : lp.A)
        if (static_cast<int>(row.size()) != lp.cols) throw ValidationError("LP row length mismatch");
    for (long long v : lp.b)
        if (v < 0) throw ValidationError("LP right-hand side must be non-negative");

    Tableau tab(lp);
    MpqLpResult res;
    const int W = tab.width();

    // Phase I: maximise minus the sum of artificials.
    std::vector<mpq_class> phase1(W, 0);
    for (int j = lp.cols; j < W; ++j) phase1[j] = -1;
    tab.set_objective(phase1);
    tab.optimise(W, res.pivots, opts.max_pivots);
    if (tab.value() < 0) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // Drive zero-level artificials out of the basis where possible; rows that
    // cannot be pivoted are redundant and keep their artificial at zero.
    for (int r = 0; r < tab.rows(); ++r) {
        if (tab.basis(r) < lp.cols) continue;
        for (int j = 0; j < lp.cols; ++j) {
            if (tab.entry(r, j) != 0) {
                tab.pivot(r, j);
                ++res.pivots;
                break;
            }
        }
    }

    // Phase II over the original columns only.
    std::vector<mpq_class> phase2(W, 0);
    for (int j = 0; j < lp.cols; ++j) phase2[j] = static_cast<long>(lp.c[j]);
    tab.set_objective(phase2);
    if (!tab.optimise(lp.cols, res.pivots, opts.max_pivots)) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.objective = tab.value();
    res.primal.assign(lp.cols, 0);
    for (int r = 0; r < tab.rows(); ++r)
        if (tab.basis(r) < lp.cols) res.primal[tab.basis(r)] = tab.rhs(r);
    res.dual.resize(lp.rows);
    for (int r = 0; r < lp.rows; ++r) res.dual[r] = tab.reduced(lp.cols + r);
    return res;
}

}  // namespace detail

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts) {
    auto r = detail::solve_lp_mpq(lp, opts);
    LpSolution s;
    s.status = r.status;
    s.pivots = r.pivots;
    if (r.status != LpStatus::Optimal) return s;
    s.objective = detail::to_rational(r.objective);
    for (const auto& v : r.primal) s.primal.push_back(detail::to_rational(v));
    for (const auto& v : r.dual) s.dual.push_back(detail::to_rational(v));
    return s;
}

}  // namespace bfl
