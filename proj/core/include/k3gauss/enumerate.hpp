#pragma once

// Exact solution of the slice systems  F.M = t, F^2 = sigma  over a Picard
// lattice with M^2 > 0.
//
// The affine solution set of the linear condition is F0 + K Z^(rank-1), with
// K a kernel basis of the form x -> x.M obtained from the Hermite reduction
// of (gram*M)^T and F0 from the extended-gcd certificate. Restricted to that
// set the intersection form is negative definite (orthogonal complement of a
// positive class in signature (1, rank-1)), so the negated form has an exact
// rational LDL^T factorization and the solutions are enumerated by interval
// recursion on it (Fincke-Pohst), with all bounds decided by integer
// comparisons. Results are bit-exact and complete.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "k3gauss/lattice.hpp"

namespace k3gauss {

inline constexpr unsigned long long kDefaultNodeBudget = 100'000'000ULL;

struct SliceQuery {
    const PicardLattice* lattice = nullptr;
    DivisorClass M;   // must have M^2 > 0
    Int t;            // required degree F.M
    Int sigma;        // required square F^2
};

struct EnumerationStats {
    unsigned long long nodes = 0;
};

struct EnumerationResult {
    std::vector<DivisorClass> solutions;  // canonical (lexicographic) order
    bool exhaustive = true;               // always true for slice queries
    EnumerationStats stats;
};

// Reusable parametrization of { F : F.M = t } for one (lattice, M);
// amortizes the kernel basis and LDL across the t-slices of one criterion.
class SliceEnumerator {
public:
    SliceEnumerator(const PicardLattice& lat, DivisorClass M,
                    unsigned long long node_budget = kDefaultNodeBudget);

    EnumerationResult solve(const Int& t, const Int& sigma) const;

    // Radius of a coordinate box certified to contain every solution of the
    // (t, sigma) slice, from the ellipsoid bounds of the enumeration itself.
    // Used by the oracle-equivalence tests.
    Int solution_box_radius(const Int& t, const Int& sigma) const;

    const PicardLattice& lattice() const { return lat_; }

private:
    const PicardLattice& lat_;
    DivisorClass M_;
    unsigned long long budget_;
    int n_;                            // lattice rank
    int m_;                            // kernel rank = n-1
    Int g_;                            // gcd of gram*M
    DivisorClass F1_;                  // F1.M = g  (particular solution for t = g)
    std::vector<std::vector<Int>> K_;  // kernel basis, K_[i] is the i-th basis vector
    // negated restricted form P = -K^T G K, positive definite, P = L D L^T
    std::vector<std::vector<Rat>> L_;
    std::vector<Rat> D_;
    std::vector<std::vector<Rat>> Pinv_;  // for the box-radius bound

    struct Affine;  // per-t data
    std::optional<Affine> affine(const Int& t) const;
};

EnumerationResult enumerate_slice(const SliceQuery& q,
                                  unsigned long long node_budget = kDefaultNodeBudget);

// Certified upper bound on the degree x = F.D of any class F with F^2 = sigma
// and F.N <= tau, obtained from Cauchy-Schwarz on the negative definite part
// of the lattice (see derive_degree_bound).
struct BoundDerivation {
    Int d_squared;       // D^2
    Int n_dot_d;         // N.D
    Rat q_p_prime;       // q(P') = (P.D)^2/D^2 - P^2 for P = N - D
    Int sigma, tau;
    Rat quad_a, quad_b, quad_c;  // exclusion quadratic A x^2 + B x + C > 0
    std::string str() const;
};

struct DegreeBound {
    bool certified = false;
    Int bound;  // meaningful only when certified
    std::optional<BoundDerivation> derivation;
};

// Decompose F = (x/D^2) D + F' against the rational orthogonal complement of
// D, where q(v) = -v^2 is positive definite. Any F with F^2 = sigma,
// F.D = x >= 1 and F.N <= tau must satisfy
//     q(F') q(P') >= (x (N.D)/D^2 - tau)^2   whenever the right side is >= 0,
// with q(F') = -sigma + x^2/D^2. When N.D > 0 and the x^2 coefficient of the
// right side exceeds q(P')/D^2 the inequality fails for all large x; the
// returned bound is the integer ceiling of the largest real root (never an
// undershoot). Otherwise the bound is not certified (Unbounded).
DegreeBound derive_degree_bound(const PicardLattice& lat, const DivisorClass& ample_ref,
                                const DivisorClass& N, const Int& sigma, const Int& tau);

// Exhaustive scan of the coordinate box [-radius, radius]^rank; test oracle.
// Throws WorkLimitError when rank*log2(2*radius+1) exceeds the cap (~2^31
// points by default).
std::vector<DivisorClass> brute_force_oracle(const PicardLattice& lat, const Int& radius,
                                             const std::function<bool(const DivisorClass&)>& pred,
                                             double max_log2_points = 31.0);

}  // namespace k3gauss
