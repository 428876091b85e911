#pragma once

#include "systolekit/cubical.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <vector>

namespace systolekit::chains {

using cubical::CubeCell;
using cubical::CubeComplex;
using Rational = boost::multiprecision::cpp_rational;

/// Real (rational-coefficient) cubical chain of fixed degree.
struct CubicalChain {
    int ambient_dim = 0;
    int degree = 0;
    std::map<CubeCell, Rational> coeffs; // nonzero entries on degree-cells only

    void add(const CubeCell& cell, const Rational& k);
    bool is_zero() const { return coeffs.empty(); }
};

/// Alternating-sign cubical boundary; boundary of a boundary is zero.
CubicalChain boundary(const CubicalChain& c);

/// Volume of an axis cell of the unit-cube complex in the sup-norm ambient
/// (inscribed-Riemannian): 1 for every cell; 0-cells count 1 by convention
/// (diagnostics only).
double linf_cell_volume(const CubeCell& cell);

double chain_volume(const CubicalChain& c);
Rational chain_volume_exact(const CubicalChain& c);

/// l-infinity distance between the supports of two axis cells.
double cell_support_distance(const CubeCell& a, const CubeCell& b);

struct FillingResult {
    CubicalChain filler;       // exact rational coefficients, boundary == z
    double volume = 0.0;
    Rational volume_exact = 0;
    /// max l-inf distance from the filler's support to the cycle's support
    double tube_radius = 0.0;
};

/// Minimal-volume real chain with boundary z, over the (deg z + 1)-cells of
/// K: an exact rational LP via the |x| = x+ + x- split. The optimum
/// lower-bounds every integer filling. Throws Infeasible when z is not a
/// boundary in K (its class in H_deg is nontrivial), DegreeMismatch on
/// malformed degrees.
FillingResult filling_lp(const CubicalChain& z, const CubeComplex& K);

/// Independent certificate: rank[B] == rank[B | z] over the rationals, where
/// B is the boundary matrix onto degree-(deg z) cells.
bool boundary_rank_certificate(const CubicalChain& z, const CubeComplex& K);

struct IsoperimetricConstants {
    int n = 1;
    double C_n = 1.0;
    double alpha_n = 0.0; // 1 / (4^n (n+1)^n C_n^n)
    double beta_n = 0.0;  // C_n (2^(n+1) + (n+1)(1 + 2^n))
};

IsoperimetricConstants isoperimetric_constants(int n, double C_n);

struct ConstantACertificate {
    double A = 0.0;
    double slack_a1 = 0.0;       // alpha_{n-1} - A n
    double slack_a2 = 0.0;       // alpha_n - A - beta_{n-1} (A n)^(n/(n-1))
    double slack_a3 = 0.0;       // alpha_n / 2 - A
    double slack_strict = 0.0;   // 1/(beta_{n-1}^(n-1) n^n) - A
    double bisection_tol = 0.0;
    bool maximal = false;        // A + 2 tol violates some constraint
};

/// Largest A satisfying the three growth-constant constraints, strictly
/// below 1/(beta_{n-1}^{n-1} n^n), by monotone bisection. Requires n >= 2.
ConstantACertificate regularity_constant_A(int n, double C_n_minus_1, double C_n,
                                           double tol = 1e-9);

struct IsoVerdict {
    enum class Status { Pass, Fail, HypothesisNotMet } status = Status::Pass;
    double volume_bound = 0.0; // beta_n vol(z)^((n+1)/n)
    double tube_bound = 0.0;   // beta_n vol(z)^(1/n)
    bool volume_ok = true;
    bool tube_ok = true;
};

/// Checks the filling inequality and tube-support bound for a computed
/// filler; hypothesis vol(z) <= alpha_n gates the verdict.
IsoVerdict isoperimetric_check(const CubicalChain& z, const FillingResult& result,
                               const IsoperimetricConstants& consts, double tol = 1e-9);

} // namespace systolekit::chains
