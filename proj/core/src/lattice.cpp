#include "k3gauss/lattice.hpp"

#include <sstream>

namespace k3gauss {

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass r = a;
    for (int i = 0; i < a.dim(); ++i) r.coords[i] += b.coords[i];
    return r;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass r = a;
    for (int i = 0; i < a.dim(); ++i) r.coords[i] -= b.coords[i];
    return r;
}

DivisorClass operator-(const DivisorClass& a) {
    DivisorClass r = a;
    for (Int& x : r.coords) x = -x;
    return r;
}

DivisorClass operator*(const Int& s, const DivisorClass& a) {
    DivisorClass r = a;
    for (Int& x : r.coords) x *= s;
    return r;
}

bool DivisorClass::operator<(const DivisorClass& o) const {
    for (int i = 0; i < dim() && i < o.dim(); ++i) {
        int c = cmp(coords[i], o.coords[i]);
        if (c != 0) return c < 0;
    }
    return dim() < o.dim();
}

std::string DivisorClass::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < dim(); ++i) {
        if (i) os << ", ";
        os << coords[i];
    }
    os << ")";
    return os.str();
}

Inertia exact_inertia(const std::vector<std::vector<Int>>& sym) {
    const int n = static_cast<int>(sym.size());
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rat(sym[i][j]);

    Inertia in;
    for (int k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][i] != 0) { piv = i; break; }
            if (piv >= 0) {
                std::swap(a[k], a[piv]);
                for (int i = 0; i < n; ++i) std::swap(a[i][k], a[i][piv]);
            } else {
                int off = -1;
                for (int i = k + 1; i < n; ++i)
                    if (a[k][i] != 0) { off = i; break; }
                if (off < 0) {
                    // whole trailing row/column zero: null direction
                    ++in.zero;
                    continue;
                }
                // add row/col `off` into k; new diagonal entry is 2*a[k][off] != 0
                for (int jj = 0; jj < n; ++jj) a[k][jj] += a[off][jj];
                for (int ii = 0; ii < n; ++ii) a[ii][k] += a[ii][off];
            }
        }
        const Rat p = a[k][k];
        if (p > 0)
            ++in.positive;
        else
            ++in.negative;
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rat f = a[i][k] / p;
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (int i = k + 1; i < n; ++i) {
            a[k][i] = 0;
            a[i][k] = 0;
        }
    }
    return in;
}

namespace {

// Leading principal minors det(A[0..k][0..k]) by Bareiss fraction-free
// elimination; exact over the integers.
std::vector<Int> leading_minors(const std::vector<std::vector<Int>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Int>> a = m;
    std::vector<Int> minors(n);
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        minors[k] = a[k][k];
        if (a[k][k] == 0) {
            // Bareiss needs a nonzero pivot; minors from here on are not
            // computed by this routine.
            for (int r = k; r < n; ++r) minors[r] = 0;
            return minors;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return minors;
}

}  // namespace

std::optional<Signature> signature_by_leading_minors(const std::vector<std::vector<Int>>& sym) {
    const auto minors = leading_minors(sym);
    Signature s;
    Int prev = 1;
    for (const Int& mk : minors) {
        if (mk == 0) return std::nullopt;
        if (sgn(mk) == sgn(prev))
            ++s.positive;
        else
            ++s.negative;
        prev = mk;
    }
    return s;
}

PicardLattice::PicardLattice(std::vector<std::vector<Int>> gram,
                             std::string name,
                             std::vector<std::string> basis_labels)
    : gram_(std::move(gram)), name_(std::move(name)), labels_(std::move(basis_labels)) {
    rank_ = static_cast<int>(gram_.size());
    if (rank_ < 1) throw ConstraintError("lattice rank must be positive");
    if (rank_ > 20)
        throw ConstraintError("rank " + std::to_string(rank_) +
                              " exceeds 20 (not realizable on a K3 surface)");
    for (int i = 0; i < rank_; ++i)
        if (static_cast<int>(gram_[i].size()) != rank_)
            throw ConstraintError("gram matrix is not square");
    for (int i = 0; i < rank_; ++i)
        for (int j = i + 1; j < rank_; ++j)
            if (gram_[i][j] != gram_[j][i])
                throw ConstraintError("gram is not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    for (int i = 0; i < rank_; ++i)
        if (gram_[i][i] % 2 != 0)
            throw ConstraintError("odd diagonal entry " + gram_[i][i].get_str() + " at index " +
                                  std::to_string(i) + " (lattice must be even)");

    const Inertia in = exact_inertia(gram_);
    if (in.zero > 0) throw ConstraintError("gram is degenerate (determinant 0)");
    sig_ = Signature{in.positive, in.negative};
    if (sig_.positive != 1)
        throw ConstraintError("signature (" + std::to_string(sig_.positive) + "," +
                              std::to_string(sig_.negative) + "), expected (1," +
                              std::to_string(rank_ - 1) + ")");

    // determinant via Bareiss; nonzero by the inertia check above
    const auto minors = leading_minors(gram_);
    det_ = minors[rank_ - 1];
    if (det_ == 0) {
        // zero leading minor hit before the end; fall back to expansion via inertia-safe
        // permuted congruence is unnecessary: recompute with a dense rational elimination
        std::vector<std::vector<Rat>> a(rank_, std::vector<Rat>(rank_));
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) a[i][j] = Rat(gram_[i][j]);
        Rat d = 1;
        for (int k = 0; k < rank_; ++k) {
            int piv = -1;
            for (int i = k; i < rank_; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) { d = 0; break; }
            if (piv != k) { std::swap(a[piv], a[k]); d = -d; }
            d *= a[k][k];
            for (int i = k + 1; i < rank_; ++i) {
                const Rat f = a[i][k] / a[k][k];
                for (int j = k; j < rank_; ++j) a[i][j] -= f * a[k][j];
            }
        }
        d.canonicalize();
        det_ = d.get_num();  // integer matrix determinant: denominator is 1
    }

    all_even_ = true;
    for (int i = 0; i < rank_ && all_even_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (gram_[i][j] % 2 != 0) { all_even_ = false; break; }

    if (labels_.empty()) {
        for (int i = 0; i < rank_; ++i) labels_.push_back("e" + std::to_string(i + 1));
    } else if (static_cast<int>(labels_.size()) != rank_) {
        throw ConstraintError("basis_labels length does not match rank");
    }
}

Int PicardLattice::pair(const DivisorClass& f, const DivisorClass& g) const {
    if (f.dim() != rank_ || g.dim() != rank_)
        throw DimensionError("class length " + std::to_string(f.dim() != rank_ ? f.dim() : g.dim()) +
                             " does not match lattice rank " + std::to_string(rank_));
    Int acc = 0;
    for (int i = 0; i < rank_; ++i) {
        if (f.coords[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < rank_; ++j) row += gram_[i][j] * g.coords[j];
        acc += f.coords[i] * row;
    }
    return acc;
}

DivisorClass PicardLattice::basis_class(int i) const {
    DivisorClass c;
    c.coords.assign(rank_, Int(0));
    c.coords[i] = 1;
    return c;
}

std::string PicardLattice::id() const {
    if (!name_.empty()) return name_;
    std::ostringstream os;
    os << "lattice[";
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) os << gram_[i][j] << (i == rank_ - 1 && j == rank_ - 1 ? "" : " ");
    os << "]";
    return os.str();
}

PicardLattice make_rank5_lattice(const DiagonalFamilyParams& p) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ConstraintError("family constraint violated: " + what);
    };
    need(p.k >= 2, "k >= 2 (k=" + p.k.get_str() + ")");
    need(p.j >= 2, "j >= 2 (j=" + p.j.get_str() + ")");
    need(p.l >= 2, "l >= 2 (l=" + p.l.get_str() + ")");
    need(p.m >= 2, "m >= 2 (m=" + p.m.get_str() + ")");
    need(p.h >= p.k + 1, "h >= k+1 (h=" + p.h.get_str() + ", k=" + p.k.get_str() + ")");
    need(p.h >= p.j + 1, "h >= j+1 (h=" + p.h.get_str() + ", j=" + p.j.get_str() + ")");
    need(p.h >= p.l + 1, "h >= l+1 (h=" + p.h.get_str() + ", l=" + p.l.get_str() + ")");
    need(p.h >= p.m + 1, "h >= m+1 (h=" + p.h.get_str() + ", m=" + p.m.get_str() + ")");

    std::vector<std::vector<Int>> g(5, std::vector<Int>(5, Int(0)));
    g[0][0] = 2 * p.h;
    g[1][1] = -2 * p.k;
    g[2][2] = -2 * p.j;
    g[3][3] = -2 * p.l;
    g[4][4] = -2 * p.m;
    std::string name = "rank5(" + p.h.get_str() + "," + p.k.get_str() + "," + p.j.get_str() + "," +
                       p.l.get_str() + "," + p.m.get_str() + ")";
    return PicardLattice(std::move(g), std::move(name), {"D", "L", "R", "S", "T"});
}

PicardLattice make_rank2_lattice() {
    std::vector<std::vector<Int>> g{{Int(4), Int(7)}, {Int(7), Int(2)}};
    return PicardLattice(std::move(g), "rank2(D2=4,L2=2,DL=7)", {"D", "L"});
}

Int pair(const PicardLattice& lat, const DivisorClass& f, const DivisorClass& g) {
    return lat.pair(f, g);
}

Int genus_of_class(const PicardLattice& lat, const DivisorClass& htilde) {
    const Int sq = lat.square(htilde);
    if (sq < 0)
        throw PreconditionError("genus undefined: class has negative square " + sq.get_str());
    if (sq % 2 != 0)
        throw InconsistencyError("odd self-intersection " + sq.get_str() + " on an even lattice");
    return 1 + sq / 2;
}

bool is_primitive(const DivisorClass& cls) {
    if (cls.is_zero()) throw PreconditionError("primitivity undefined for the zero class");
    return gcd(cls.coords) == 1;
}

int min_genus_for_expected_surjectivity() {
    // dim I_2(K_C) = g(g+1)/2 - (3g-3) = (g-2)(g-3)/2 must reach
    // dim H^0(4K_C) = 7g-7.
    for (int g = 2;; ++g) {
        const long lhs = static_cast<long>(g - 2) * (g - 3) / 2;
        const long rhs = 7L * (g - 1);
        if (lhs >= rhs) return g;
    }
}

}  // namespace k3gauss
