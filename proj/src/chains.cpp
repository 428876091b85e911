#include "systolekit/chains.hpp"

#include <algorithm>
#include <cmath>

namespace systolekit::chains {

using cubical::Tag;

void CubicalChain::add(const CubeCell& cell, const Rational& k) {
    if (static_cast<int>(cell.spec.size()) != ambient_dim)
        fail("DegreeMismatch", "cell ambient dimension mismatch");
    if (cell.dim() != degree)
        fail("DegreeMismatch", "cell of dimension " + std::to_string(cell.dim()) +
                                   " in a degree-" + std::to_string(degree) + " chain");
    auto it = coeffs.find(cell);
    if (it == coeffs.end()) {
        if (k != 0) coeffs.emplace(cell, k);
    } else {
        it->second += k;
        if (it->second == 0) coeffs.erase(it);
    }
}

CubicalChain boundary(const CubicalChain& c) {
    if (c.degree < 1) fail("DegreeMismatch", "boundary of a degree-0 chain");
    CubicalChain out;
    out.ambient_dim = c.ambient_dim;
    out.degree = c.degree - 1;
    for (const auto& [cell, k] : c.coeffs) {
        int j = 0; // position among the free coordinates
        for (std::size_t i = 0; i < cell.spec.size(); ++i) {
            if (cell.spec[i] != Tag::Free) continue;
            const Rational sign = (j % 2 == 0) ? k : -k;
            CubeCell hi = cell, lo = cell;
            hi.spec[i] = Tag::One;
            lo.spec[i] = Tag::Zero;
            out.add(hi, sign);
            out.add(lo, -sign);
            ++j;
        }
    }
    return out;
}

double linf_cell_volume(const CubeCell&) { return 1.0; }

double chain_volume(const CubicalChain& c) {
    return static_cast<double>(chain_volume_exact(c));
}

Rational chain_volume_exact(const CubicalChain& c) {
    Rational total = 0;
    for (const auto& [cell, k] : c.coeffs)
        total += (k < 0 ? -k : k) * Rational(1); // every axis cell has volume 1
    return total;
}

double cell_support_distance(const CubeCell& a, const CubeCell& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < a.spec.size(); ++i) {
        const double alo = a.spec[i] == Tag::One ? 1.0 : 0.0;
        const double ahi = a.spec[i] == Tag::Zero ? 0.0 : 1.0;
        const double blo = b.spec[i] == Tag::One ? 1.0 : 0.0;
        const double bhi = b.spec[i] == Tag::Zero ? 0.0 : 1.0;
        gap = std::max(gap, std::max(alo - bhi, blo - ahi));
    }
    return gap;
}

namespace {

// Dense two-phase primal simplex over the rationals with Bland's rule.
// min c.x subject to A x = b, x >= 0. Returns nullopt when infeasible.
class RationalSimplex {
public:
    RationalSimplex(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                    std::vector<Rational> c)
        : a_(std::move(A)), b_(std::move(b)), c_(std::move(c)),
          m_(a_.size()), n_(m_ ? a_[0].size() : 0) {}

    std::optional<std::vector<Rational>> solve() {
        if (m_ == 0) return std::vector<Rational>(n_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (b_[i] < 0) {
                b_[i] = -b_[i];
                for (auto& v : a_[i]) v = -v;
            }
        }
        // phase 1: artificial basis
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            a_[i].resize(n_ + m_, 0);
            a_[i][n_ + i] = 1;
        }
        std::vector<Rational> phase1_cost(n_ + m_, 0);
        for (std::size_t i = 0; i < m_; ++i) phase1_cost[n_ + i] = 1;
        run(phase1_cost);
        Rational infeas = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_) infeas += b_[i];
        if (infeas != 0) return std::nullopt;
        // drive remaining zero-valued artificials out of the basis
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (a_[i][j] != 0) { enter = j; break; }
            if (enter == n_) continue; // redundant row, harmless with zero rhs
            pivot(i, enter);
        }
        std::vector<Rational> phase2_cost(n_ + m_, 0);
        for (std::size_t j = 0; j < n_; ++j) phase2_cost[j] = c_[j];
        // forbid artificials from re-entering
        for (std::size_t j = n_; j < n_ + m_; ++j) phase2_cost[j] = 0;
        artificials_blocked_ = true;
        run(phase2_cost);
        std::vector<Rational> x(n_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = b_[i];
        return x;
    }

private:
    void run(const std::vector<Rational>& cost) {
        for (;;) {
            // reduced costs via the basic cost multipliers
            std::vector<Rational> cb(m_);
            for (std::size_t i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
            std::size_t enter = SIZE_MAX;
            const std::size_t limit = artificials_blocked_ ? n_ : n_ + m_;
            for (std::size_t j = 0; j < limit; ++j) {
                Rational rc = cost[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (cb[i] != 0 && a_[i][j] != 0) rc -= cb[i] * a_[i][j];
                if (rc < 0) { enter = j; break; } // Bland: lowest index
            }
            if (enter == SIZE_MAX) return;
            std::size_t leave = SIZE_MAX;
            Rational best_ratio = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (a_[i][enter] <= 0) continue;
                Rational ratio = b_[i] / a_[i][enter];
                if (leave == SIZE_MAX || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == SIZE_MAX)
                fail("Infeasible", "filling LP unbounded (inconsistent volumes)");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = a_[row][col];
        for (auto& v : a_[row]) v /= p;
        b_[row] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || a_[i][col] == 0) continue;
            const Rational f = a_[i][col];
            for (std::size_t j = 0; j < a_[i].size(); ++j) a_[i][j] -= f * a_[row][j];
            b_[i] -= f * b_[row];
        }
        basis_[row] = col;
    }

    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::vector<Rational> c_;
    std::size_t m_, n_;
    std::vector<std::size_t> basis_;
    bool artificials_blocked_ = false;
};

std::size_t rational_rank(std::vector<std::vector<Rational>> mat) {
    if (mat.empty()) return 0;
    const std::size_t rows = mat.size(), cols = mat[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && mat[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(mat[rank], mat[piv]);
        const Rational p = mat[rank][col];
        for (auto& v : mat[rank]) v /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || mat[i][col] == 0) continue;
            const Rational f = mat[i][col];
            for (std::size_t j = 0; j < cols; ++j) mat[i][j] -= f * mat[rank][j];
        }
        ++rank;
    }
    return rank;
}

// rows: degree-k cells spanning K's k-cells plus z's support; cols: K's
// (k+1)-cells
struct BoundarySystem {
    std::vector<CubeCell> rows;
    std::vector<CubeCell> cols;
    std::vector<std::vector<Rational>> matrix; // rows x cols
    std::vector<Rational> rhs;
};

BoundarySystem boundary_system(const CubicalChain& z, const CubeComplex& K) {
    if (z.ambient_dim != K.ambient_dim)
        fail("DegreeMismatch", "cycle and complex ambient dimensions differ");
    BoundarySystem sys;
    std::set<CubeCell> row_set;
    for (const CubeCell& c : K.cells)
        if (c.dim() == z.degree) row_set.insert(c);
    for (const auto& [c, k] : z.coeffs) {
        (void)k;
        row_set.insert(c);
    }
    sys.rows.assign(row_set.begin(), row_set.end());
    sys.cols = K.cells_of_dim(z.degree + 1);
    std::map<CubeCell, std::size_t> row_index;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) row_index[sys.rows[i]] = i;
    sys.matrix.assign(sys.rows.size(), std::vector<Rational>(sys.cols.size(), 0));
    for (std::size_t j = 0; j < sys.cols.size(); ++j) {
        CubicalChain unit;
        unit.ambient_dim = K.ambient_dim;
        unit.degree = z.degree + 1;
        unit.add(sys.cols[j], 1);
        for (const auto& [face, k] : boundary(unit).coeffs) {
            auto it = row_index.find(face);
            if (it == row_index.end())
                fail("Infeasible", "complex is not closed under faces");
            sys.matrix[it->second][j] = k;
        }
    }
    sys.rhs.assign(sys.rows.size(), 0);
    for (const auto& [c, k] : z.coeffs) sys.rhs[row_index.at(c)] = k;
    return sys;
}

} // namespace

FillingResult filling_lp(const CubicalChain& z, const CubeComplex& K) {
    if (z.degree < 0) fail("DegreeMismatch", "negative degree");
    FillingResult result;
    result.filler.ambient_dim = K.ambient_dim;
    result.filler.degree = z.degree + 1;
    if (z.is_zero()) return result;

    BoundarySystem sys = boundary_system(z, K);
    const std::size_t ncells = sys.cols.size();
    if (ncells == 0) fail("Infeasible", "complex has no cells of degree " +
                                            std::to_string(z.degree + 1));
    // variables: x_j = c_j^+ , x_{ncells+j} = c_j^-
    std::vector<std::vector<Rational>> A(sys.rows.size(),
                                         std::vector<Rational>(2 * ncells, 0));
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
        for (std::size_t j = 0; j < ncells; ++j) {
            A[i][j] = sys.matrix[i][j];
            A[i][ncells + j] = -sys.matrix[i][j];
        }
    std::vector<Rational> cost(2 * ncells, 0);
    for (std::size_t j = 0; j < ncells; ++j) {
        const Rational vol = 1; // axis cells all have unit volume
        cost[j] = vol;
        cost[ncells + j] = vol;
    }
    RationalSimplex lp(std::move(A), sys.rhs, std::move(cost));
    auto solution = lp.solve();
    if (!solution)
        fail("Infeasible",
             "cycle is not a boundary in the complex (nontrivial homology class)");
    for (std::size_t j = 0; j < ncells; ++j) {
        const Rational v = (*solution)[j] - (*solution)[ncells + j];
        if (v != 0) result.filler.add(sys.cols[j], v);
    }
    result.volume_exact = chain_volume_exact(result.filler);
    result.volume = static_cast<double>(result.volume_exact);
    double tube = 0.0;
    for (const auto& [cell, k] : result.filler.coeffs) {
        (void)k;
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& [zc, zk] : z.coeffs) {
            (void)zk;
            nearest = std::min(nearest, cell_support_distance(cell, zc));
        }
        tube = std::max(tube, nearest);
    }
    result.tube_radius = tube;
    return result;
}

bool boundary_rank_certificate(const CubicalChain& z, const CubeComplex& K) {
    if (z.is_zero()) return true;
    BoundarySystem sys = boundary_system(z, K);
    const std::size_t r1 = rational_rank(sys.matrix);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) sys.matrix[i].push_back(sys.rhs[i]);
    const std::size_t r2 = rational_rank(sys.matrix);
    return r1 == r2;
}

IsoperimetricConstants isoperimetric_constants(int n, double C_n) {
    if (n < 1 || C_n <= 0) fail("NonpositiveInput", "need n >= 1 and C_n > 0");
    IsoperimetricConstants k;
    k.n = n;
    k.C_n = C_n;
    k.alpha_n = 1.0 / (std::pow(4.0, n) * std::pow(n + 1.0, n) * std::pow(C_n, n));
    k.beta_n = C_n * (std::pow(2.0, n + 1) + (n + 1.0) * (1.0 + std::pow(2.0, n)));
    return k;
}

ConstantACertificate regularity_constant_A(int n, double C_n_minus_1, double C_n,
                                           double tol) {
    if (n < 2) fail("NonpositiveInput", "regularity constant requires n >= 2");
    const auto lower = isoperimetric_constants(n - 1, C_n_minus_1);
    const auto upper = isoperimetric_constants(n, C_n);
    const double strict = 1.0 / (std::pow(lower.beta_n, n - 1) * std::pow(n, n));
    // tol is relative to the feasible interval's scale: the constants span
    // many orders of magnitude across n
    const double scale = std::min({lower.alpha_n / n, upper.alpha_n / 2.0, strict});
    if (scale <= 0) fail("NoFeasibleA", "parameter corruption: empty feasible interval");
    const double tol_abs = tol * scale;
    const double cap =
        std::min({lower.alpha_n / n, upper.alpha_n / 2.0, strict - tol_abs});
    auto g = [&](double A) {
        return A + lower.beta_n * std::pow(A * n, static_cast<double>(n) / (n - 1)) -
               upper.alpha_n;
    };
    double A;
    if (g(cap) <= 0) {
        A = cap;
    } else {
        double lo = 0.0, hi = cap;
        while (hi - lo > tol_abs) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) <= 0 ? lo : hi) = mid;
        }
        A = lo;
    }
    ConstantACertificate cert;
    cert.A = A;
    cert.bisection_tol = tol_abs;
    cert.slack_a1 = lower.alpha_n - A * n;
    cert.slack_a2 = -g(A);
    cert.slack_a3 = upper.alpha_n / 2.0 - A;
    cert.slack_strict = strict - A;
    if (cert.slack_a1 < 0 || cert.slack_a2 < 0 || cert.slack_a3 < 0 || cert.slack_strict <= 0)
        fail("NoFeasibleA", "bisection produced an infeasible A (parameter corruption)");
    const double probe = A + 2 * tol_abs;
    cert.maximal = probe * n > lower.alpha_n || g(probe) > 0 ||
                   probe > upper.alpha_n / 2.0 || probe >= strict;
    return cert;
}

IsoVerdict isoperimetric_check(const CubicalChain& z, const FillingResult& result,
                               const IsoperimetricConstants& consts, double tol) {
    IsoVerdict v;
    const double volz = chain_volume(z);
    if (volz > consts.alpha_n) {
        v.status = IsoVerdict::Status::HypothesisNotMet;
        return v;
    }
    const double n = consts.n;
    v.volume_bound = consts.beta_n * std::pow(volz, (n + 1.0) / n);
    v.tube_bound = consts.beta_n * std::pow(volz, 1.0 / n);
    v.volume_ok = result.volume <= v.volume_bound + tol;
    v.tube_ok = result.tube_radius <= v.tube_bound + tol;
    v.status = (v.volume_ok && v.tube_ok) ? IsoVerdict::Status::Pass
                                          : IsoVerdict::Status::Fail;
    return v;
}

} // namespace systolekit::chains
