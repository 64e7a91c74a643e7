#include "crjet/odejets.hpp"

#include <algorithm>
#include <map>

namespace crjet {

const char* to_string(OdeErrc code) {
    switch (code) {
        case OdeErrc::InvalidOde: return "InvalidOde";
        case OdeErrc::InconsistentSeed: return "InconsistentSeed";
        case OdeErrc::WrongGamma: return "WrongGamma";
    }
    return "?";
}

const char* to_string(CoefficientStatus status) {
    switch (status) {
        case CoefficientStatus::Resolved: return "resolved";
        case CoefficientStatus::Deferred: return "deferred";
        case CoefficientStatus::Free: return "free";
    }
    return "?";
}

std::vector<int> JetRecursionResult::orders_with(CoefficientStatus status) const {
    std::vector<int> out;
    for (const auto& e : ledger)
        if (e.status == status) out.push_back(e.order);
    return out;
}

bool KernelChainReport::within_bound() const {
    return std::all_of(rows.begin(), rows.end(),
                       [&](const ChainRow& r) { return r.terminated_at && *r.terminated_at <= bound; });
}

SingularODE make_ode(int gamma, std::vector<RealSeries> p, RealSeries q, std::vector<Rational> theta) {
    if (gamma < 0) throw OdeError(OdeErrc::InvalidOde, "gamma must be nonnegative");
    if (p.empty()) throw OdeError(OdeErrc::InvalidOde, "p must have at least one component");
    const int n = static_cast<int>(p.size());
    if (q.arity() != n + 1) throw OdeError(OdeErrc::InvalidOde, "expected variables (x, y1..y" + std::to_string(n) + ")");
    for (const auto& pi : p) {
        if (pi.variables() != q.variables()) throw OdeError(OdeErrc::InvalidOde, "p and q use different variables");
        if (pi.order() != q.order()) throw OdeError(OdeErrc::InvalidOde, "p and q have different truncation orders");
    }
    if (q.constant_term().is_zero()) throw OdeError(OdeErrc::InvalidOde, "q(0, 0) = 0");
    SingularODE ode;
    ode.gamma = gamma;
    ode.n = n;
    ode.p = std::move(p);
    ode.q = std::move(q);
    ode.theta = std::move(theta);
    return ode;
}

namespace {

RealSeries real_series(const TruncatedSeries& s, int order) {
    RealSeries out(s.variables(), order);
    for (const auto& [m, c] : s.terms()) {
        if (!c.is_real()) throw OdeError(OdeErrc::InvalidOde, "ode coefficients must be real");
        out.set(m, c.real());
    }
    return out;
}

}  // namespace

SingularODE ode_from_document(const Document& doc) {
    if (doc.kind != DocumentKind::Ode || !doc.gamma) throw OdeError(OdeErrc::InvalidOde, "not an ode document");
    const int order = doc.order + *doc.gamma;
    std::vector<RealSeries> p;
    for (const auto& pi : doc.p) p.push_back(real_series(pi, order));
    return make_ode(*doc.gamma, std::move(p), real_series(doc.at("q"), order), doc.theta);
}

RealSeries parse_real_series(const std::string& text, const Variables& vars, int order) {
    return real_series(parse_series(text, vars, order), order);
}

namespace {

// c + sum lin[u] * unknown_u, exact to first order in the unknowns. `nonlinear`
// records that a product of two non-constant forms was dropped.
struct Affine {
    Rational c;
    std::map<int, Rational> lin;
    bool nonlinear = false;

    bool is_zero() const { return c.is_zero() && lin.empty() && !nonlinear; }
    bool is_constant() const { return lin.empty() && !nonlinear; }

    static Affine unknown(int id) {
        Affine a;
        a.lin[id] = 1;
        return a;
    }

    void add_scaled(const Affine& b, const Rational& f) {
        if (f.is_zero()) return;
        c += b.c * f;
        for (const auto& [k, v] : b.lin) {
            Rational& t = lin[k];
            t += v * f;
            if (t.is_zero()) lin.erase(k);
        }
        nonlinear = nonlinear || b.nonlinear;
    }
};

Affine multiply(const Affine& a, const Affine& b) {
    Affine r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c = a.c * b.c;
    if (!b.c.is_zero())
        for (const auto& [k, v] : a.lin) r.lin[k] = v * b.c;
    if (!a.c.is_zero())
        for (const auto& [k, v] : b.lin) {
            Rational& t = r.lin[k];
            t += v * a.c;
            if (t.is_zero()) r.lin.erase(k);
        }
    r.nonlinear = a.nonlinear || b.nonlinear || (!a.lin.empty() && !b.lin.empty());
    return r;
}

// Coefficients of x^0..x^M.
using Jet = std::vector<Affine>;

Jet multiply(const Jet& a, const Jet& b, int M) {
    Jet r(static_cast<std::size_t>(M + 1));
    for (int i = 0; i <= M; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= M; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j].add_scaled(multiply(a[i], b[j]), Rational(1));
        }
    }
    return r;
}

// P(x, y(x)) for a polynomial P over (x, y1..yn).
Jet evaluate(const RealSeries& P, const std::vector<Jet>& y, int M) {
    const int n = static_cast<int>(y.size());
    std::vector<std::vector<Jet>> powers(static_cast<std::size_t>(n));
    auto power = [&](int i, int b) -> const Jet& {
        auto& pw = powers[static_cast<std::size_t>(i)];
        if (pw.empty()) {
            Jet one(static_cast<std::size_t>(M + 1));
            one[0].c = 1;
            pw.push_back(std::move(one));
        }
        while (static_cast<int>(pw.size()) <= b) pw.push_back(multiply(pw.back(), y[static_cast<std::size_t>(i)], M));
        return pw[static_cast<std::size_t>(b)];
    };
    Jet out(static_cast<std::size_t>(M + 1));
    for (const auto& [m, coef] : P.terms()) {
        const int shift = m[0];
        if (shift > M) continue;
        Jet t(static_cast<std::size_t>(M + 1));
        t[0].c = 1;
        for (int i = 0; i < n; ++i)
            if (m[i + 1] > 0) t = multiply(t, power(i, m[i + 1]), M - shift);
        for (int k = 0; k + shift <= M && k < static_cast<int>(t.size()); ++k) out[k + shift].add_scaled(t[k], coef);
    }
    return out;
}

// f = p/q along y; f[i][m].
std::vector<Jet> rhs(const SingularODE& ode, const std::vector<Jet>& y, int M) {
    const Jet q = evaluate(ode.q, y, M);
    if (q[0].c.is_zero()) throw OdeError(OdeErrc::InvalidOde, "q(0, y(0)) = 0");
    // 1/(c + L) = 1/c - L/c^2 to first order.
    Affine inv;
    inv.c = Rational(1) / q[0].c;
    inv.add_scaled(Affine{Rational(0), q[0].lin, q[0].nonlinear}, -inv.c * inv.c);
    std::vector<Jet> f;
    for (const auto& pi : ode.p) {
        const Jet p = evaluate(pi, y, M);
        Jet r(static_cast<std::size_t>(M + 1));
        for (int m = 0; m <= M; ++m) {
            Affine acc = p[m];
            for (int j = 1; j <= m; ++j)
                if (!q[j].is_zero() && !r[m - j].is_zero()) acc.add_scaled(multiply(q[j], r[m - j]), Rational(-1));
            r[m] = multiply(acc, inv);
        }
        f.push_back(std::move(r));
    }
    return f;
}

std::vector<Jet> constant_jets(const SingularODE& ode, const CoefficientTable& y, int M) {
    std::vector<Jet> out(static_cast<std::size_t>(ode.n), Jet(static_cast<std::size_t>(M + 1)));
    for (int s = 0; s <= M && s < static_cast<int>(y.size()); ++s) {
        if (static_cast<int>(y[s].size()) != ode.n) throw std::invalid_argument("coefficient table has wrong dimension");
        for (int i = 0; i < ode.n; ++i) out[i][s].c = y[s][i];
    }
    return out;
}

RealSeries to_series(const Jet& j, int M) {
    RealSeries s(Variables{"x"}, M);
    for (int m = 0; m <= M; ++m) s.set(MultiIndex{m}, j[m].c);
    return s;
}

// Residual x^(gamma+1) y' - f, component i at x^m.
std::vector<Jet> equations(const SingularODE& ode, const std::vector<Jet>& y, int M) {
    std::vector<Jet> e = rhs(ode, y, M);
    for (int i = 0; i < ode.n; ++i) {
        Jet& ei = e[static_cast<std::size_t>(i)];
        for (int m = 0; m <= M; ++m) {
            Affine lhs;
            if (m >= ode.gamma && m - ode.gamma >= 1) lhs.add_scaled(y[i][m - ode.gamma], Rational(m - ode.gamma));
            lhs.add_scaled(ei[m], Rational(-1));
            ei[m] = std::move(lhs);
        }
    }
    return e;
}

}  // namespace

RealSeries rhs_jet(const SingularODE& ode, const CoefficientTable& y, std::optional<int> order) {
    const int M = order.value_or(ode.order());
    if (M < 0) throw std::invalid_argument("rhs_jet: negative order");
    if (ode.n != 1) throw std::invalid_argument("rhs_jet: use ode_residual for systems");
    return to_series(rhs(ode, constant_jets(ode, y, M), M)[0], M);
}

std::vector<RealSeries> ode_residual(const SingularODE& ode, const CoefficientTable& y, int order) {
    const auto e = equations(ode, constant_jets(ode, y, order), order);
    std::vector<RealSeries> out;
    for (const auto& ei : e) out.push_back(to_series(ei, order));
    return out;
}

std::vector<RationalMatrix> linearization(const SingularODE& ode, const CoefficientTable& yhat, int L) {
    std::vector<Jet> y = constant_jets(ode, yhat, L);
    for (int i = 0; i < ode.n; ++i) y[i][0].lin[i] = 1;
    const auto f = rhs(ode, y, L);
    std::vector<RationalMatrix> out;
    for (int l = 0; l <= L; ++l) {
        RationalMatrix m = RationalMatrix::Constant(ode.n, ode.n, Rational(0));
        for (int row = 0; row < ode.n; ++row)
            for (const auto& [col, v] : f[row][l].lin) m(row, col) = v;
        out.push_back(std::move(m));
    }
    return out;
}

RationalMatrix jacobian_at_origin(const SingularODE& ode) {
    return linearization(ode, CoefficientTable{std::vector<Rational>(static_cast<std::size_t>(ode.n), Rational(0))}, 0)[0];
}

JetRecursionResult formal_coefficients(const SingularODE& ode, const CoefficientTable& seed, int N) {
    const int n = ode.n;
    if (N < 0) throw std::invalid_argument("formal_coefficients: negative working order");
    if (static_cast<int>(seed.size()) > N + 1) throw std::invalid_argument("seed is longer than the working order");
    for (const auto& a : seed)
        if (static_cast<int>(a.size()) != n) throw std::invalid_argument("seed entry has wrong dimension");

    // An empty seed stands for y(0) = 0.
    CoefficientTable known = seed.empty() ? CoefficientTable{std::vector<Rational>(static_cast<std::size_t>(n))} : seed;
    const int s0 = static_cast<int>(known.size());
    const int window = std::min(N + ode.gamma, ode.order());
    const int top = std::max(N, window);
    const int unknowns = (top - s0 + 1) * n;
    std::vector<std::optional<Rational>> value(static_cast<std::size_t>(std::max(unknowns, 0)));
    std::vector<bool> after_choice(value.size(), false);
    auto id = [&](int s, int i) { return (s - s0) * n + i; };

    auto build = [&] {
        std::vector<Jet> y(static_cast<std::size_t>(n), Jet(static_cast<std::size_t>(window + 1)));
        for (int s = 0; s <= window; ++s)
            for (int i = 0; i < n; ++i) {
                if (s < s0)
                    y[i][s].c = known[s][i];
                else if (value[id(s, i)])
                    y[i][s].c = *value[id(s, i)];
                else
                    y[i][s] = Affine::unknown(id(s, i));
            }
        return y;
    };

    bool chosen = false;
    while (true) {
        const auto e = equations(ode, build(), window);
        struct Row {
            int order;
            const Affine* eq;
        };
        std::vector<Row> rows;
        std::map<int, int> column;
        for (int m = 0; m <= window; ++m)
            for (int i = 0; i < n; ++i) {
                const Affine& a = e[i][m];
                if (a.nonlinear) continue;
                if (a.lin.empty()) {
                    if (!a.c.is_zero())
                        throw OdeError(OdeErrc::InconsistentSeed,
                                       "equation at x^" + std::to_string(m) + " reads " + a.c.str() + " = 0" +
                                           (chosen ? " after setting free coefficients to zero" : ""),
                                       m);
                    continue;
                }
                rows.push_back({m, &a});
                for (const auto& [u, v] : a.lin) column.emplace(u, 0);
            }
        int pinned = 0;
        if (!rows.empty()) {
            std::vector<int> ids;
            for (auto& [u, c] : column) {
                c = static_cast<int>(ids.size());
                ids.push_back(u);
            }
            const int cols = static_cast<int>(ids.size());
            auto assemble = [&](int max_order) {
                std::vector<const Affine*> use;
                for (const auto& r : rows)
                    if (r.order <= max_order) use.push_back(r.eq);
                RationalMatrix m = RationalMatrix::Constant(static_cast<Eigen::Index>(use.size()), cols + 1, Rational(0));
                for (std::size_t r = 0; r < use.size(); ++r) {
                    for (const auto& [u, v] : use[r]->lin) m(static_cast<Eigen::Index>(r), column.at(u)) = v;
                    m(static_cast<Eigen::Index>(r), cols) = -use[r]->c;
                }
                return row_reduce(std::move(m));
            };
            const RowEchelon ech = assemble(window);
            if (!ech.pivots.empty() && ech.pivots.back() == cols) {
                int bad = window;
                for (int m = 0; m <= window; ++m) {
                    const RowEchelon part = assemble(m);
                    if (!part.pivots.empty() && part.pivots.back() == cols) {
                        bad = m;
                        break;
                    }
                }
                throw OdeError(OdeErrc::InconsistentSeed,
                               "linear equations through x^" + std::to_string(bad) + " have no solution" +
                                   (chosen ? " after setting free coefficients to zero" : ""),
                               bad);
            }
            for (int r = 0; r < ech.rank(); ++r) {
                const int pc = ech.pivots[static_cast<std::size_t>(r)];
                bool unique = true;
                for (int c = 0; c < cols && unique; ++c)
                    if (c != pc && !ech.reduced(r, c).is_zero()) unique = false;
                if (!unique) continue;
                value[ids[pc]] = ech.reduced(r, cols);
                after_choice[ids[pc]] = chosen;
                ++pinned;
            }
        }
        if (pinned > 0) continue;
        auto open = std::find_if(value.begin(), value.end(), [](const auto& v) { return !v.has_value(); });
        if (open == value.end()) break;
        *open = Rational(0);
        after_choice[static_cast<std::size_t>(open - value.begin())] = true;
        chosen = true;
    }

    JetRecursionResult out;
    out.gamma = ode.gamma;
    out.n = n;
    out.N = N;
    out.seed_order = s0 - 1;
    out.equation_window = window;
    for (int s = 0; s <= N; ++s) {
        std::vector<Rational> a(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) a[i] = s < s0 ? known[s][i] : *value[id(s, i)];
        out.coefficients.push_back(std::move(a));
    }
    const RationalMatrix f0 = linearization(ode, CoefficientTable{known[0]}, 0)[0];
    for (int s = s0; s <= N; ++s) {
        RationalMatrix frontier = -f0;
        if (ode.gamma == 0) frontier += identity_matrix(n) * Rational(s);
        LedgerEntry entry;
        entry.order = s;
        entry.frontier_rank = rank(frontier);
        entry.kernel_dimension = n - entry.frontier_rank;
        bool free = false;
        for (int i = 0; i < n; ++i) free = free || after_choice[id(s, i)];
        entry.status = free ? CoefficientStatus::Free
                            : entry.kernel_dimension == 0 ? CoefficientStatus::Resolved : CoefficientStatus::Deferred;
        out.ledger.push_back(entry);
    }
    if (!out.has_free()) out.determination_order = out.seed_order;
    return out;
}

std::vector<int> resonance_set(const SingularODE& ode, int N) {
    if (ode.gamma != 0) throw OdeError(OdeErrc::WrongGamma, "resonances are defined for gamma = 0");
    const auto chi = characteristic_polynomial(jacobian_at_origin(ode));
    std::vector<int> out;
    for (int k = 1; k <= N; ++k)
        if (evaluate_polynomial(chi, Rational(k)).is_zero()) out.push_back(k);
    return out;
}

DeterminationOrder determination_order(const SingularODE& ode, const JetRecursionResult& base, int N) {
    if (base.N < N) throw std::invalid_argument("base recursion is shorter than the working order");
    if (std::any_of(base.coefficients[0].begin(), base.coefficients[0].end(), [](const Rational& r) { return !r.is_zero(); }))
        throw std::invalid_argument("determination order needs a base solution vanishing at 0");
    DeterminationOrder out;
    out.N = N;
    for (int k = 0; k <= N; ++k) {
        const CoefficientTable seed(base.coefficients.begin(), base.coefficients.begin() + k + 1);
        const JetRecursionResult run = formal_coefficients(ode, seed, N);
        const auto free = run.orders_with(CoefficientStatus::Free);
        if (!free.empty()) {
            out.failures.emplace_back(k, free.front());
            continue;
        }
        for (int s = 0; s <= N; ++s)
            if (run.coefficients[s] != base.coefficients[s])
                throw std::invalid_argument("base is not a formal solution: forced a_" + std::to_string(s) +
                                            " differs from the base value");
        out.k = k;
        return out;
    }
    return out;
}

KernelChainReport kernel_chain_diagnostic(const SingularODE& ode, const JetRecursionResult& base, int r_max) {
    const int g = ode.gamma;
    const int n = ode.n;
    if (g < 1) throw OdeError(OdeErrc::WrongGamma, "the kernel chain is defined for gamma >= 1");
    KernelChainReport out;
    out.gamma = g;
    out.n = n;
    out.bound = n * g;
    const int steps = out.bound;
    const int L = steps * g + g - 1;
    if (base.N < L) throw std::invalid_argument("base recursion must reach order " + std::to_string(L));
    const auto F = linearization(ode, base.coefficients, L);
    const int b = g * n;

    // Q^u: block (i, i') = F_{u g + i - i'}.
    std::vector<RationalMatrix> Q;
    for (int u = 0; u <= steps; ++u) {
        RationalMatrix m = RationalMatrix::Constant(b, b, Rational(0));
        for (int i = 0; i < g; ++i)
            for (int ip = 0; ip < g; ++ip) {
                const int l = u * g + i - ip;
                if (l >= 0) m.block(i * n, ip * n, n, n) = F[l];
            }
        Q.push_back(std::move(m));
    }
    out.q0 = Q[0];
    // C_r: x^m equations of block r carry (m - g) on a_{m-g}, m = r g + i.
    auto C = [&](int r) {
        RationalMatrix m = RationalMatrix::Constant(b, b, Rational(0));
        for (int i = 0; i < g; ++i)
            for (int c = 0; c < n; ++c) m(i * n + c, i * n + c) = Rational((r - 1) * g + i + 1);
        return m;
    };

    for (int r = 1; r <= r_max; ++r) {
        ChainRow row;
        row.r = r;
        for (int j = 0; j <= steps; ++j) {
            const int size = (j + 1) * b;
            RationalMatrix S = RationalMatrix::Constant(size, size, Rational(0));
            for (int t = 0; t <= j; ++t) {
                for (int c = 0; c <= t; ++c) S.block(t * b, c * b, b, b) = Q[t - c];
                if (t >= 1) S.block(t * b, (t - 1) * b, b, b) -= C(r + t);
            }
            const RationalMatrix K = kernel_basis(S);
            const int dim = K.cols() == 0 ? 0 : rank(RationalMatrix(K.topRows(b)));
            row.dims.push_back(dim);
            if (dim == 0) {
                row.terminated_at = j;
                break;
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace crjet
