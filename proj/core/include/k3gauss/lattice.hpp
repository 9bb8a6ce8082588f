#pragma once

// Candidate Neron-Severi lattices of K3 surfaces and their divisor classes.
//
// A PicardLattice is an even nondegenerate symmetric integer bilinear form of
// signature (1, rank-1) with rank <= 20; these are the necessary conditions
// for the lattice to occur as the Picard group of an algebraic K3 surface.
// All signature computations are exact (rational congruence reduction); no
// floating point.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3gauss/errors.hpp"
#include "k3gauss/ints.hpp"

namespace k3gauss {

// Integer coordinate vector relative to a lattice basis.
struct DivisorClass {
    std::vector<Int> coords;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Int> c) : coords(std::move(c)) {}
    DivisorClass(std::initializer_list<long> c) {
        coords.reserve(c.size());
        for (long v : c) coords.emplace_back(v);
    }

    int dim() const { return static_cast<int>(coords.size()); }
    bool is_zero() const {
        for (const Int& x : coords)
            if (x != 0) return false;
        return true;
    }

    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a);
    friend DivisorClass operator*(const Int& s, const DivisorClass& a);
    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
    bool operator!=(const DivisorClass& o) const { return coords != o.coords; }
    // lexicographic on coordinates; the canonical order used everywhere
    bool operator<(const DivisorClass& o) const;

    std::string str() const;  // "(a, b, ...)"
};

struct Signature {
    int positive = 0;
    int negative = 0;
    bool operator==(const Signature& o) const = default;
};

class PicardLattice {
public:
    // Validates: symmetry, even diagonal, nondegeneracy, signature (1, rank-1),
    // rank <= 20. Throws ConstraintError naming the violated invariant.
    explicit PicardLattice(std::vector<std::vector<Int>> gram,
                           std::string name = "",
                           std::vector<std::string> basis_labels = {});

    int rank() const { return rank_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const Int& gram(int i, int j) const { return gram_[i][j]; }
    const std::vector<std::vector<Int>>& gram_matrix() const { return gram_; }

    const Int& det() const { return det_; }
    Signature signature() const { return sig_; }
    // True iff every Gram entry is even; then all pairings are even.
    bool all_entries_even() const { return all_even_; }

    Int pair(const DivisorClass& f, const DivisorClass& g) const;
    Int square(const DivisorClass& f) const { return pair(f, f); }
    DivisorClass basis_class(int i) const;

    bool operator==(const PicardLattice& o) const { return gram_ == o.gram_; }

    // Stable identifier for reports and cache keys: the name when present,
    // otherwise a content string.
    std::string id() const;

private:
    int rank_;
    std::vector<std::vector<Int>> gram_;
    std::string name_;
    std::vector<std::string> labels_;
    Int det_;
    Signature sig_;
    bool all_even_;
};

// Exact inertia (#positive, #negative, #zero eigenvalues) of a symmetric
// rational matrix, by congruence reduction (symmetric pivoting; a zero
// diagonal with a nonzero off-diagonal entry is repaired by a row+column
// addition, which preserves inertia).
struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};
Inertia exact_inertia(const std::vector<std::vector<Int>>& sym);

// Second route for the same quantity: sign changes of the leading principal
// minors (Jacobi). Only valid when all leading minors are nonzero; returns
// nullopt otherwise. Minors computed by fraction-free (Bareiss) elimination.
std::optional<Signature> signature_by_leading_minors(const std::vector<std::vector<Int>>& sym);

// Parameters of the diagonal rank-5 family diag(2h,-2k,-2j,-2l,-2m).
struct DiagonalFamilyParams {
    Int h, k, j, l, m;
};

// Basis named D, L, R, S, T. Throws ConstraintError naming the failed
// inequality when the parameters leave the family.
PicardLattice make_rank5_lattice(const DiagonalFamilyParams& params);

// Gram [[4,7],[7,2]], basis D, L.
PicardLattice make_rank2_lattice();

Int pair(const PicardLattice& lat, const DivisorClass& f, const DivisorClass& g);

// g = 1 + H~^2/2 for a class of nonnegative even square. Throws
// PreconditionError on negative square.
Int genus_of_class(const PicardLattice& lat, const DivisorClass& htilde);

// gcd of all coordinates equals 1. Throws PreconditionError on the zero class.
bool is_primitive(const DivisorClass& cls);

// Least g >= 2 with dim I_2(K_C) = (g-2)(g-3)/2 >= dim H^0(4K_C) = 7(g-1);
// the genus from which surjectivity is possible by dimension count. Returns 18.
int min_genus_for_expected_surjectivity();

}  // namespace k3gauss
