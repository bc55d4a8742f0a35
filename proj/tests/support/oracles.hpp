// Independent test oracles. These deliberately re-derive results through
// different algorithms than the library under test: plain unoptimized
// Fourier-Motzkin for feasibility, and vertex enumeration + simplicial
// decomposition (Dirichlet's formula) for exact integrals, instead of the
// library's canonicalized kernel and chamber-splitting antiderivatives.
#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dpa/polynomial.hpp"
#include "dpa/polytope.hpp"

namespace oracle {

using dpa::AffineForm;
using dpa::Polynomial;
using dpa::Polytope;
using dpa::Rational;
using dpa::Variable;

// ---------------------------------------------------------------------------
// Plain Fourier-Motzkin feasibility: rows mean form <= 0; variables are
// eliminated in the order given; no tightening, no redundancy removal.
inline bool feasible(std::vector<AffineForm> rows, const std::vector<Variable>& vars) {
    for (const auto& v : vars) {
        std::vector<AffineForm> keep, lowers, uppers;
        for (const auto& f : rows) {
            const Rational a = f.coefficient(v);
            if (a == 0)
                keep.push_back(f);
            else if (a < 0)
                lowers.push_back(f);
            else
                uppers.push_back(f);
        }
        for (const auto& lf : lowers) {
            const Rational la = -lf.coefficient(v);
            for (const auto& uf : uppers) {
                keep.push_back(lf * uf.coefficient(v) + uf * la);
            }
        }
        rows = std::move(keep);
    }
    for (const auto& f : rows) {
        assert(f.is_constant());
        if (f.constant() > 0) return false;
    }
    return true;
}

// All constraints of a polytope as non-strict rows over all its variables
// (pins unfolded into opposite inequality pairs).
inline std::vector<AffineForm> unfolded_rows(const Polytope& p) {
    std::vector<AffineForm> rows;
    if (p.is_empty()) {
        rows.push_back(AffineForm(Rational(1)));
        return rows;
    }
    for (const auto& [v, rhs] : p.pins()) {
        const AffineForm d = AffineForm::var(v) - rhs;
        rows.push_back(d);
        rows.push_back(-d);
    }
    for (const auto& f : p.inequalities()) rows.push_back(f);
    return rows;
}

// ---------------------------------------------------------------------------
// A tiny dense polynomial over positionally indexed variables, independent of
// dpa::Polynomial's representation and operations.
struct QPoly {
    std::map<std::vector<int>, Rational> terms;  // exponent vector -> coefficient

    static QPoly constant(const Rational& c, int nvars) {
        QPoly p;
        if (c != 0) p.terms[std::vector<int>(static_cast<std::size_t>(nvars), 0)] = c;
        return p;
    }
    void add(const std::vector<int>& e, const Rational& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (c != 0) terms[e] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
    QPoly mul(const QPoly& o) const {
        QPoly r;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::vector<int> e = e1;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                r.add(e, c1 * c2);
            }
        return r;
    }
};

inline Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

// Exact Gaussian solve of a square rational system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const Rational d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) a[col][j] /= d;
        b[col] /= d;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational f = a[row][col];
            for (std::size_t j = 0; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    return b;
}

using Point = std::vector<Rational>;

// Vertices of {rows <= 0} in R^d: every d-subset of rows solved as equalities
// and filtered by feasibility. Assumes a bounded region.
inline std::vector<Point> enumerate_vertices(const std::vector<std::vector<Rational>>& rows,
                                             const std::vector<Rational>& consts, int d) {
    const std::size_t m = rows.size();
    std::set<Point> found;
    std::vector<std::size_t> pick(static_cast<std::size_t>(d));
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int k) {
        if (k == d) {
            std::vector<std::vector<Rational>> a;
            std::vector<Rational> b;
            for (int i = 0; i < d; ++i) {
                a.push_back(rows[pick[static_cast<std::size_t>(i)]]);
                b.push_back(-consts[pick[static_cast<std::size_t>(i)]]);
            }
            auto x = solve_square(a, b);
            if (!x) return;
            for (std::size_t r = 0; r < m; ++r) {
                Rational val = consts[r];
                for (int j = 0; j < d; ++j) val += rows[r][static_cast<std::size_t>(j)] * (*x)[static_cast<std::size_t>(j)];
                if (val > 0) return;
            }
            found.insert(*x);
            return;
        }
        for (std::size_t i = start; i + static_cast<std::size_t>(d - k) <= m; ++i) {
            pick[static_cast<std::size_t>(k)] = i;
            rec(i + 1, k + 1);
        }
    };
    if (d > 0 && m >= static_cast<std::size_t>(d)) rec(0, 0);
    return {found.begin(), found.end()};
}

// Recursive apex-fan triangulation of conv(pts) in R^k from the facet
// hyperplanes, everything exact. Returns index (k+1)-tuples.
inline std::vector<std::vector<int>> triangulate(const std::vector<Point>& pts, int k) {
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<int>> out;
    if (k == 0 || n == 0) return out;
    if (n == k + 1) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
        out.push_back(all);
        return out;
    }
    if (k == 1) {
        int lo = 0, hi = 0;
        for (int i = 1; i < n; ++i) {
            if (pts[static_cast<std::size_t>(i)] < pts[static_cast<std::size_t>(lo)]) lo = i;
            if (pts[static_cast<std::size_t>(hi)] < pts[static_cast<std::size_t>(i)]) hi = i;
        }
        out.push_back({lo, hi});
        return out;
    }
    int apex = 0;
    for (int i = 1; i < n; ++i)
        if (pts[static_cast<std::size_t>(i)] < pts[static_cast<std::size_t>(apex)]) apex = i;

    // facet hyperplanes by brute force over (k)-subsets of points
    std::set<std::set<int>> facets;
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int taken) {
        if (taken == k) {
            // normal n of the hyperplane through the picked points:
            // (p_i - p_0) . n = 0, fixed scale via a free pivot
            const Point& p0 = pts[static_cast<std::size_t>(pick[0])];
            std::vector<std::vector<Rational>> a;
            for (int i = 1; i < k; ++i) {
                std::vector<Rational> row(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j)
                    row[static_cast<std::size_t>(j)] =
                        pts[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]
                           [static_cast<std::size_t>(j)] -
                        p0[static_cast<std::size_t>(j)];
                a.push_back(std::move(row));
            }
            // nullspace vector by trying each coordinate as the free one
            std::vector<Rational> normal;
            for (int free = 0; free < k && normal.empty(); ++free) {
                std::vector<std::vector<Rational>> sq;
                std::vector<Rational> rhs;
                for (const auto& row : a) {
                    std::vector<Rational> r2;
                    for (int j = 0; j < k; ++j)
                        if (j != free) r2.push_back(row[static_cast<std::size_t>(j)]);
                    sq.push_back(std::move(r2));
                    rhs.push_back(-row[static_cast<std::size_t>(free)]);
                }
                if (k - 1 == 0) {
                    normal.assign(static_cast<std::size_t>(k), Rational(0));
                    normal[static_cast<std::size_t>(free)] = 1;
                    break;
                }
                auto sol = solve_square(sq, rhs);
                if (!sol) continue;
                normal.assign(static_cast<std::size_t>(k), Rational(0));
                normal[static_cast<std::size_t>(free)] = 1;
                int at = 0;
                for (int j = 0; j < k; ++j)
                    if (j != free) normal[static_cast<std::size_t>(j)] = (*sol)[static_cast<std::size_t>(at++)];
            }
            if (normal.empty()) return;  // picked points affinely dependent
            bool pos = false, neg = false;
            std::set<int> tight;
            for (int i = 0; i < n; ++i) {
                Rational s(0);
                for (int j = 0; j < k; ++j)
                    s += normal[static_cast<std::size_t>(j)] *
                         (pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                          p0[static_cast<std::size_t>(j)]);
                if (s > 0) pos = true;
                else if (s < 0) neg = true;
                else tight.insert(i);
            }
            if (pos && neg) return;  // interior hyperplane
            facets.insert(std::move(tight));
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[static_cast<std::size_t>(taken)] = i;
            rec(i + 1, taken + 1);
        }
    };
    rec(0, 0);

    for (const auto& facet : facets) {
        if (facet.contains(apex)) continue;
        const std::vector<int> fidx(facet.begin(), facet.end());
        // coordinates of the facet points within their affine hull
        const Point& o = pts[static_cast<std::size_t>(fidx[0])];
        std::vector<Point> dirs;
        std::vector<int> basis_rows;  // coordinates used for solving
        for (std::size_t i = 1; i < fidx.size() && static_cast<int>(dirs.size()) < k - 1; ++i) {
            Point d2(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j)
                d2[static_cast<std::size_t>(j)] =
                    pts[static_cast<std::size_t>(fidx[i])][static_cast<std::size_t>(j)] -
                    o[static_cast<std::size_t>(j)];
            // accept if it grows the span (rank check by re-solving)
            dirs.push_back(d2);
            std::vector<std::vector<Rational>> gram;
            for (const auto& u : dirs) {
                std::vector<Rational> row;
                for (const auto& w : dirs) {
                    Rational s(0);
                    for (int j = 0; j < k; ++j)
                        s += u[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
                    row.push_back(s);
                }
                gram.push_back(std::move(row));
            }
            if (!solve_square(gram, std::vector<Rational>(dirs.size(), Rational(0)))) {
                // singular Gram: dependent direction
                dirs.pop_back();
            }
        }
        if (static_cast<int>(dirs.size()) != k - 1) continue;  // facet is lower-dimensional
        std::vector<Point> fpts;
        for (const int gi : fidx) {
            // solve Gram * u = dirs . (p - o)
            std::vector<std::vector<Rational>> gram;
            std::vector<Rational> rhs;
            for (const auto& u : dirs) {
                std::vector<Rational> row;
                for (const auto& w : dirs) {
                    Rational s(0);
                    for (int j = 0; j < k; ++j)
                        s += u[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
                    row.push_back(s);
                }
                gram.push_back(std::move(row));
                Rational s(0);
                for (int j = 0; j < k; ++j)
                    s += u[static_cast<std::size_t>(j)] *
                         (pts[static_cast<std::size_t>(gi)][static_cast<std::size_t>(j)] -
                          o[static_cast<std::size_t>(j)]);
                rhs.push_back(s);
            }
            auto u = solve_square(gram, rhs);
            assert(u);
            fpts.push_back(*u);
        }
        for (const auto& tri : triangulate(fpts, k - 1)) {
            std::vector<int> simplex{apex};
            for (const int ti : tri) simplex.push_back(fidx[static_cast<std::size_t>(ti)]);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

inline Rational det(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            d = -d;
        }
        d *= a[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            const Rational f = a[row][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
        }
    }
    return d;
}

// Exact integral of `value` over the free space of `p` by simplicial
// decomposition and Dirichlet's formula. `p` must be bounded.
inline Rational integrate_exact(const Polytope& p, const Polynomial& value) {
    if (p.is_empty()) return Rational(0);
    const std::vector<Variable> free = p.free_variables();
    const int d = static_cast<int>(free.size());
    std::map<Variable, int> pos;
    for (int i = 0; i < d; ++i) pos[free[static_cast<std::size_t>(i)]] = i;
    if (d == 0) return value.constant_value();

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> consts;
    for (const auto& f : p.inequalities()) {
        std::vector<Rational> row(static_cast<std::size_t>(d), Rational(0));
        for (const auto& [v, c] : f.coefficients()) row[static_cast<std::size_t>(pos.at(v))] = c;
        rows.push_back(std::move(row));
        consts.push_back(f.constant());
    }
    const std::vector<Point> verts = enumerate_vertices(rows, consts, d);
    if (static_cast<int>(verts.size()) < d + 1) return Rational(0);

    // value as an exponent-vector polynomial over the free variables
    QPoly vp;
    for (const auto& [mono, coeff] : value.terms()) {
        std::vector<int> e(static_cast<std::size_t>(d), 0);
        for (const auto& [v, exp] : mono) e[static_cast<std::size_t>(pos.at(v))] = exp;
        vp.add(e, coeff);
    }

    Rational total(0);
    for (const auto& tri : triangulate(verts, d)) {
        const Point& v0 = verts[static_cast<std::size_t>(tri[0])];
        std::vector<std::vector<Rational>> jac(static_cast<std::size_t>(d),
                                               std::vector<Rational>(static_cast<std::size_t>(d)));
        for (int col = 0; col < d; ++col)
            for (int row = 0; row < d; ++row)
                jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                    verts[static_cast<std::size_t>(tri[static_cast<std::size_t>(col + 1)])]
                         [static_cast<std::size_t>(row)] -
                    v0[static_cast<std::size_t>(row)];
        Rational jdet = det(jac);
        if (jdet == 0) continue;
        if (jdet < 0) jdet = -jdet;

        // compose x_row = v0_row + sum_col jac[row][col] * u_col, in QPoly form
        std::vector<QPoly> coords;
        for (int row = 0; row < d; ++row) {
            QPoly c = QPoly::constant(v0[static_cast<std::size_t>(row)], d);
            for (int col = 0; col < d; ++col) {
                std::vector<int> e(static_cast<std::size_t>(d), 0);
                e[static_cast<std::size_t>(col)] = 1;
                c.add(e, jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
            }
            coords.push_back(std::move(c));
        }
        QPoly composed;
        for (const auto& [e, c] : vp.terms) {
            QPoly term = QPoly::constant(c, d);
            for (int j = 0; j < d; ++j)
                for (int rep = 0; rep < e[static_cast<std::size_t>(j)]; ++rep)
                    term = term.mul(coords[static_cast<std::size_t>(j)]);
            for (const auto& [e2, c2] : term.terms) composed.add(e2, c2);
        }
        // Dirichlet: integral of u^beta over the standard simplex
        Rational simplex_sum(0);
        for (const auto& [e, c] : composed.terms) {
            int tot = 0;
            Rational num(1);
            for (const int b : e) {
                tot += b;
                num *= factorial(b);
            }
            simplex_sum += c * num / factorial(tot + d);
        }
        total += jdet * simplex_sum;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (doubles), for low-dimensional cross-checks.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps, int depth = 60) {
    const auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f((lo + hi) / 2.0) + f(hi));
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi,
                                                                 double whole, int d2) {
        const double mid = (lo + hi) / 2.0;
        const double left = simpson(lo, mid);
        const double right = simpson(mid, hi);
        if (d2 <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, d2 - 1) + rec(mid, hi, right, d2 - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

inline double adaptive_simpson2d(const std::function<double(double, double)>& f, double x0,
                                 double x1, const std::function<double(double)>& ylo,
                                 const std::function<double(double)>& yhi, double eps) {
    return adaptive_simpson(
        [&](double x) {
            const double a = ylo(x), b = yhi(x);
            if (!(a < b)) return 0.0;
            return adaptive_simpson([&](double y) { return f(x, y); }, a, b, eps / 10.0, 40);
        },
        x0, x1, eps, 40);
}

}  // namespace oracle
