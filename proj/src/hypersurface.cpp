#include "crjet/hypersurface.hpp"

#include <sstream>

#include "crjet/series_io.hpp"
#include "crjet/series_ops.hpp"

namespace crjet {

namespace {

// conj(Q)(x, z, t): conjugate coefficients and swap the roles of z and x.
TruncatedSeries swap_conjugate(const TruncatedSeries& a) {
    return embed(conjugate_series(a), a.variables(), {a.variables()[1], a.variables()[0], a.variables()[2]});
}

}  // namespace

std::vector<std::string> check_real_graph(const RealGraph& g) {
    std::vector<std::string> out;
    if (g.phi.variables() != kGraphVars) {
        out.push_back("phi must be a series in (z, x, s)");
        return out;
    }
    for (const auto& [m, c] : g.phi.terms())
        if (m[0] == 0 || m[1] == 0) out.push_back("normality: " + term_to_dsl(g.phi.variables(), m, c));
    const TruncatedSeries mirrored = swap_conjugate(g.phi);
    const TruncatedSeries defect = g.phi - mirrored;
    for (const auto& [m, c] : defect.terms()) out.push_back("reality: defect " + term_to_dsl(defect.variables(), m, c));
    return out;
}

NormalFormSurface from_real_graph(const RealGraph& g) {
    const auto violations = check_real_graph(g);
    if (!violations.empty()) throw SurfaceError("invalid real graph: " + violations.front());
    const int n = g.order();
    // rhs(z, x, t, u) = t + 2i * phi(z, x, (u + t)/2), solved for u = Q.
    const Variables vars{"z", "x", "t", "u"};
    const auto z = TruncatedSeries::variable(vars, n, "z");
    const auto x = TruncatedSeries::variable(vars, n, "x");
    const auto t = TruncatedSeries::variable(vars, n, "t");
    const auto u = TruncatedSeries::variable(vars, n, "u");
    const TruncatedSeries re_w = (u + t) * ComplexRational(Rational(1, 2));
    const TruncatedSeries rhs = t + compose(g.phi, {z, x, re_w}) * ComplexRational(Rational(0), Rational(2));
    return {implicit_solve(rhs, "u", n)};
}

NormalityReport check_normal(const NormalFormSurface& s) {
    NormalityReport r;
    r.certified_order = s.order();
    const MultiIndex t1{0, 0, 1};
    if (s.Q.coefficient(t1) != ComplexRational(1))
        r.violations.push_back("coefficient of t is " + to_dsl(s.Q.coefficient(t1)) + ", expected 1");
    for (const auto& [m, c] : s.Q.terms()) {
        if (m == t1) continue;
        if (m[0] == 0 || m[1] == 0) r.violations.push_back(term_to_dsl(s.Q.variables(), m, c));
    }
    r.pass = r.violations.empty();
    return r;
}

RealityReport check_reality(const NormalFormSurface& s) {
    RealityReport r;
    const TruncatedSeries& q = s.Q;
    const auto z = TruncatedSeries::variable(q.variables(), q.order(), q.variables()[0]);
    const auto x = TruncatedSeries::variable(q.variables(), q.order(), q.variables()[1]);
    const auto t = TruncatedSeries::variable(q.variables(), q.order(), q.variables()[2]);
    r.residual = compose(q, {z, x, swap_conjugate(q)}) - t;
    r.certified_order = r.residual.order();
    r.pass = r.residual.is_zero();
    return r;
}

TruncatedSeries q_function(const NormalFormSurface& s, int alpha, int mu) {
    const TruncatedSeries coeff = extract(extract(s.Q, "z", alpha), "t", mu);
    return drop_variables(coeff, kChiVars) * ComplexRational(Rational(factorial(alpha) * factorial(mu)));
}

QTable q_table(const NormalFormSurface& s, int max_m) {
    QTable table;
    for (int m = 1; m <= max_m; ++m)
        for (int mu = 0; mu < m; ++mu) table.emplace(std::make_pair(m - mu, mu), q_function(s, m - mu, mu));
    return table;
}

TruncatedSeries r_function(const NormalFormSurface& s, int beta) {
    return drop_variables(extract(extract(s.Q, "t", 0), "z", beta), kChiVars);
}

InvariantReport compute_invariants(const NormalFormSurface& s) {
    InvariantReport r;
    const int n = s.order();
    r.certified_order = n;
    for (int m = 1; m <= n && !r.m0; ++m) {
        // Ties on alpha + mu are broken by the smallest mu.
        for (int mu = 0; mu < m; ++mu) {
            const TruncatedSeries q = q_function(s, m - mu, mu);
            if (q.is_zero()) continue;
            r.m0 = m;
            r.mu0 = mu;
            r.alpha0 = m - mu;
            r.l = vanishing_order(q).value;
            break;
        }
    }
    r.levi_flat_unknown = !r.m0.has_value();
    if (r.l && r.alpha0 && *r.l < *r.alpha0)
        r.warnings.push_back("l = " + std::to_string(*r.l) + " < alpha0 = " + std::to_string(*r.alpha0));
    if (r.l && *r.l == 0) r.warnings.push_back("q_{alpha0 mu0}(0) != 0: surface is not in normal form");
    for (int beta = 1; beta <= n; ++beta) {
        if (!r_function(s, beta).is_zero()) {
            r.beta0 = beta;
            break;
        }
    }
    r.finite_type = r.beta0.has_value();
    return r;
}

std::string describe(const InvariantReport& r) {
    std::ostringstream os;
    auto show = [&](const std::optional<int>& v) {
        if (v)
            os << *v;
        else
            os << "-";
    };
    os << "(m0, alpha0, mu0, l, beta0) = (";
    if (r.m0)
        os << *r.m0;
    else
        os << "inf<=" << r.certified_order;
    os << ", ";
    show(r.alpha0);
    os << ", ";
    show(r.mu0);
    os << ", ";
    show(r.l);
    os << ", ";
    show(r.beta0);
    os << ")";
    return os.str();
}

NormalFormSurface dilate(const NormalFormSurface& s, const ComplexRational& lambda, const Rational& rho) {
    TruncatedSeries out(s.Q.variables(), s.order());
    const ComplexRational inv_l = ComplexRational(1) / lambda;
    const ComplexRational inv_lbar = inv_l.conj();
    const ComplexRational inv_rho(Rational(1) / rho);
    for (const auto& [m, c] : s.Q.terms())
        out.set(m, c * ComplexRational(rho) * pow(inv_l, m[0]) * pow(inv_lbar, m[1]) * pow(inv_rho, m[2]));
    return {out};
}

}  // namespace crjet
