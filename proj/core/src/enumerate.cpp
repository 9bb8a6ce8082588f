#include "k3gauss/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace k3gauss {

namespace {

// Column reduction of the row vector w by unimodular operations:
// returns (g, U) with w^T U = (g, 0, ..., 0), g = gcd(w) >= 0.
// U is stored column-wise: U[j] is the j-th column.
std::pair<Int, std::vector<std::vector<Int>>> hermite_row(const std::vector<Int>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<std::vector<Int>> U(n, std::vector<Int>(n, Int(0)));
    for (int j = 0; j < n; ++j) U[j][j] = 1;
    std::vector<Int> v = w;
    for (int i = 1; i < n; ++i) {
        if (v[i] == 0) continue;
        if (v[0] == 0) {
            std::swap(v[0], v[i]);
            std::swap(U[0], U[i]);
        }
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), v[0].get_mpz_t(),
                   v[i].get_mpz_t());
        const Int a_g = v[0] / g, b_g = v[i] / g;
        std::vector<Int> c0(n), ci(n);
        for (int k = 0; k < n; ++k) {
            c0[k] = x * U[0][k] + y * U[i][k];
            ci[k] = -b_g * U[0][k] + a_g * U[i][k];
        }
        U[0] = std::move(c0);
        U[i] = std::move(ci);
        v[0] = g;
        v[i] = 0;
    }
    if (v[0] < 0) {
        v[0] = -v[0];
        for (Int& x : U[0]) x = -x;
    }
    return {v[0], std::move(U)};
}

// All integers y with (y + beta)^2 <= c. Exact; uses an isqrt-based guess
// refined by the defining integer inequality.
bool quadratic_integer_interval(const Rat& beta, const Rat& c, Int& lo, Int& hi) {
    if (c < 0) return false;
    const Int cn = c.get_num(), cd = c.get_den();
    const Int bn = beta.get_num(), bd = beta.get_den();
    auto inside = [&](const Int& y) {
        // (y*bd + bn)^2 * cd <= cn * bd^2
        const Int t = y * bd + bn;
        return t * t * cd <= cn * bd * bd;
    };
    // sqrt(c) lies in [s/cd, (s+1)/cd) with s = isqrt(cn*cd)
    const Int s = isqrt(cn * cd);
    hi = floor_rat(rat(s, cd) - beta);
    while (inside(hi + 1)) ++hi;
    lo = ceil_rat(rat(-s - 1, cd) - beta);
    while (inside(lo - 1)) --lo;
    while (lo <= hi && !inside(lo)) ++lo;
    while (lo <= hi && !inside(hi)) --hi;
    return lo <= hi;
}

}  // namespace

struct SliceEnumerator::Affine {
    std::vector<Int> F0;      // particular solution, length n
    std::vector<Rat> ystar;   // ellipsoid center in kernel coordinates
    Int c0;                   // F0^2
    std::vector<Rat> u;       // K^T G F0
};

SliceEnumerator::SliceEnumerator(const PicardLattice& lat, DivisorClass M,
                                 unsigned long long node_budget)
    : lat_(lat), M_(std::move(M)), budget_(node_budget) {
    n_ = lat_.rank();
    if (M_.dim() != n_)
        throw DimensionError("class length " + std::to_string(M_.dim()) +
                             " does not match lattice rank " + std::to_string(n_));
    if (lat_.square(M_) <= 0)
        throw PreconditionError("slice enumeration requires M^2 > 0, got M^2 = " +
                                lat_.square(M_).get_str());
    std::vector<Int> w(n_);
    for (int i = 0; i < n_; ++i) {
        w[i] = 0;
        for (int j = 0; j < n_; ++j) w[i] += lat_.gram(i, j) * M_.coords[j];
    }
    auto [g, U] = hermite_row(w);
    g_ = g;
    F1_ = DivisorClass(U[0]);
    m_ = n_ - 1;
    K_.assign(m_, {});
    for (int i = 0; i < m_; ++i) K_[i] = U[i + 1];

    if (m_ == 0) return;

    // P = -K^T G K must be positive definite
    std::vector<std::vector<Rat>> P(m_, std::vector<Rat>(m_));
    for (int i = 0; i < m_; ++i) {
        const DivisorClass ki(K_[i]);
        for (int j = i; j < m_; ++j) {
            P[i][j] = Rat(-lat_.pair(ki, DivisorClass(K_[j])));
            P[j][i] = P[i][j];
        }
    }
    L_.assign(m_, std::vector<Rat>(m_, Rat(0)));
    D_.assign(m_, Rat(0));
    auto A = P;
    for (int k = 0; k < m_; ++k) {
        L_[k][k] = 1;
        D_[k] = A[k][k];
        if (D_[k] <= 0)
            throw InconsistencyError(
                "restricted form not negative definite; lattice signature violated");
        for (int i = k + 1; i < m_; ++i) L_[i][k] = A[i][k] / D_[k];
        for (int i = k + 1; i < m_; ++i)
            for (int j = k + 1; j <= i; ++j) {
                A[i][j] -= L_[i][k] * L_[j][k] * D_[k];
                A[j][i] = A[i][j];
            }
    }
    // P^{-1} columns, for the solution box bound
    Pinv_.assign(m_, std::vector<Rat>(m_));
    for (int col = 0; col < m_; ++col) {
        std::vector<Rat> z(m_);
        for (int i = 0; i < m_; ++i) {
            z[i] = (i == col) ? Rat(1) : Rat(0);
            for (int j = 0; j < i; ++j) z[i] -= L_[i][j] * z[j];
        }
        for (int i = 0; i < m_; ++i) z[i] /= D_[i];
        for (int i = m_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < m_; ++j) z[i] -= L_[j][i] * z[j];
            Pinv_[i][col] = z[i];
        }
    }
}

std::optional<SliceEnumerator::Affine> SliceEnumerator::affine(const Int& t) const {
    if (t % g_ != 0) return std::nullopt;  // gcd(gram*M) must divide t
    Affine a;
    const Int scale = t / g_;
    a.F0.resize(n_);
    for (int i = 0; i < n_; ++i) a.F0[i] = scale * F1_.coords[i];
    const DivisorClass f0(a.F0);
    a.c0 = lat_.square(f0);
    if (m_ == 0) return a;
    a.u.resize(m_);
    for (int i = 0; i < m_; ++i) a.u[i] = Rat(lat_.pair(DivisorClass(K_[i]), f0));
    // ystar = P^{-1} u  via the stored LDL
    std::vector<Rat> z(m_);
    for (int i = 0; i < m_; ++i) {
        z[i] = a.u[i];
        for (int j = 0; j < i; ++j) z[i] -= L_[i][j] * z[j];
    }
    for (int i = 0; i < m_; ++i) z[i] /= D_[i];
    a.ystar.assign(m_, Rat(0));
    for (int i = m_ - 1; i >= 0; --i) {
        a.ystar[i] = z[i];
        for (int j = i + 1; j < m_; ++j) a.ystar[i] -= L_[j][i] * a.ystar[j];
    }
    return a;
}

EnumerationResult SliceEnumerator::solve(const Int& t, const Int& sigma) const {
    EnumerationResult res;
    auto aff = affine(t);
    if (!aff) return res;
    if (m_ == 0) {
        res.stats.nodes = 1;
        if (aff->c0 == sigma) res.solutions.emplace_back(DivisorClass(aff->F0));
        return res;
    }
    // (y - ystar)^T P (y - ystar) = (c0 - sigma) + u^T ystar
    Rat R = Rat(aff->c0 - sigma);
    for (int i = 0; i < m_; ++i) R += aff->u[i] * aff->ystar[i];
    if (R < 0) return res;

    std::vector<Int> y(m_);
    std::vector<Rat> ydiff(m_);  // y_i - ystar_i as chosen so far
    unsigned long long nodes = 0;

    // level k uses s_k = (y_k - ystar_k) + sum_{i>k} L[i][k] (y_i - ystar_i);
    // contribution D_k s_k^2, recurse downward, exact equality required at the end.
    auto rec = [&](auto&& self, int k, const Rat& rem) -> void {
        Rat beta = -aff->ystar[k];
        for (int i = k + 1; i < m_; ++i) beta += L_[i][k] * ydiff[i];
        Int lo, hi;
        if (!quadratic_integer_interval(beta, rem / D_[k], lo, hi)) return;
        for (Int yk = lo; yk <= hi; ++yk) {
            if (++nodes > budget_)
                throw WorkLimitError("slice enumeration exceeded node budget of " +
                                     std::to_string(budget_));
            const Rat s = Rat(yk) + beta;
            const Rat rem2 = rem - D_[k] * s * s;
            y[k] = yk;
            ydiff[k] = Rat(yk) - aff->ystar[k];
            if (k == 0) {
                if (rem2 == 0) {
                    std::vector<Int> F = aff->F0;
                    for (int i = 0; i < m_; ++i)
                        for (int j = 0; j < n_; ++j) F[j] += K_[i][j] * y[i];
                    res.solutions.emplace_back(DivisorClass(std::move(F)));
                }
            } else {
                self(self, k - 1, rem2);
            }
        }
    };
    rec(rec, m_ - 1, R);
    res.stats.nodes = nodes;
    std::sort(res.solutions.begin(), res.solutions.end());
    return res;
}

Int SliceEnumerator::solution_box_radius(const Int& t, const Int& sigma) const {
    auto aff = affine(t);
    if (!aff) return 0;
    Int radius = 0;
    for (const Int& c : aff->F0) radius = std::max(radius, Int(abs(c)));
    if (m_ == 0) return radius;
    Rat R = Rat(aff->c0 - sigma);
    for (int i = 0; i < m_; ++i) R += aff->u[i] * aff->ystar[i];
    if (R < 0) return 0;
    // |y_k - ystar_k| <= sqrt(R * Pinv[k][k]); take integer ceilings
    std::vector<Int> ybound(m_);
    for (int k = 0; k < m_; ++k) {
        const Rat b2 = R * Pinv_[k][k];
        // ceil(sqrt(b2)) + |ystar_k| rounded out
        const Int s = isqrt(b2.get_num() * b2.get_den());
        const Int root_ceil = ceil_div(s + 1, b2.get_den());
        Rat ys = aff->ystar[k];
        const Int center = ceil_rat(rat(abs(ys.get_num()), ys.get_den()));
        ybound[k] = root_ceil + center;
    }
    radius = 0;
    for (int j = 0; j < n_; ++j) {
        Int b = abs(Int(aff->F0[j]));
        for (int i = 0; i < m_; ++i) b += abs(Int(K_[i][j])) * ybound[i];
        radius = std::max(radius, b);
    }
    return radius;
}

EnumerationResult enumerate_slice(const SliceQuery& q, unsigned long long node_budget) {
    if (q.lattice == nullptr) throw PreconditionError("slice query has no lattice");
    SliceEnumerator e(*q.lattice, q.M, node_budget);
    return e.solve(q.t, q.sigma);
}

std::string BoundDerivation::str() const {
    std::ostringstream os;
    os << "D2=" << d_squared << " N.D=" << n_dot_d << " qP'=" << to_string(q_p_prime)
       << " sigma=" << sigma << " tau=" << tau << " quad=[" << to_string(quad_a) << ","
       << to_string(quad_b) << "," << to_string(quad_c) << "]";
    return os.str();
}

DegreeBound derive_degree_bound(const PicardLattice& lat, const DivisorClass& ample_ref,
                                const DivisorClass& N, const Int& sigma, const Int& tau) {
    const Int d2 = lat.square(ample_ref);
    if (d2 <= 0)
        throw PreconditionError("degree bound requires an ample reference with D^2 > 0, got " +
                                d2.get_str());
    const Int nd = lat.pair(N, ample_ref);
    const DivisorClass P = N - ample_ref;
    const Int pd = lat.pair(P, ample_ref);
    const Rat qp = rat(pd * pd, d2) - Rat(lat.square(P));

    BoundDerivation der;
    der.d_squared = d2;
    der.n_dot_d = nd;
    der.q_p_prime = qp;
    der.sigma = sigma;
    der.tau = tau;
    der.quad_a = rat(nd * nd, d2 * d2) - qp / Rat(d2);
    der.quad_b = rat(-2 * tau * nd, d2);
    der.quad_c = Rat(tau * tau) + Rat(sigma) * qp;

    DegreeBound out;
    out.derivation = der;
    // Exclusion of x needs both x (N.D) > tau D^2 and A x^2 + B x + C > 0 with
    // A > 0; otherwise arbitrarily large x cannot be ruled out.
    if (nd <= 0 || der.quad_a <= 0) {
        out.certified = false;
        return out;
    }
    const Rat& A = der.quad_a;
    const Rat& B = der.quad_b;
    const Rat& C = der.quad_c;
    const Rat disc = B * B - 4 * A * C;
    Int root_bound = 0;
    if (disc >= 0) {
        // integer ceiling of (-B + sqrt(disc)) / (2A)
        auto is_ge_root = [&](const Int& v) {
            return A * v * v + B * v + C >= 0 && Rat(2 * v) * A >= -B;
        };
        const Int sd = isqrt(disc.get_num() * disc.get_den());
        Rat upper = (-B + rat(sd + 1, disc.get_den())) / (2 * A);
        Int x = floor_rat(upper) + 1;
        if (x < 0) x = 0;
        while (x > 0 && is_ge_root(x - 1)) --x;
        while (!is_ge_root(x)) ++x;
        root_bound = x;
    }
    const Int thresh = floor_div(tau * d2, nd);
    out.certified = true;
    out.bound = std::max(root_bound, std::max(thresh, Int(0)));
    return out;
}

std::vector<DivisorClass> brute_force_oracle(const PicardLattice& lat, const Int& radius,
                                             const std::function<bool(const DivisorClass&)>& pred,
                                             double max_log2_points) {
    if (radius < 1) throw PreconditionError("oracle box radius must be >= 1");
    const int n = lat.rank();
    const double log2side = std::log2(2.0 * radius.get_d() + 1.0);
    if (n * log2side > max_log2_points)
        throw WorkLimitError("oracle box of " + std::to_string(n) + " * log2(" +
                             Int(2 * radius + 1).get_str() + ") bits exceeds the work cap");
    std::vector<DivisorClass> out;
    DivisorClass F;
    F.coords.assign(n, -radius);
    for (;;) {
        if (pred(F)) out.push_back(F);
        int i = n - 1;
        while (i >= 0 && F.coords[i] == radius) {
            F.coords[i] = -radius;
            --i;
        }
        if (i < 0) break;
        F.coords[i] += 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace k3gauss
