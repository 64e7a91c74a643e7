#include "crjet/mapjets.hpp"

#include <type_traits>

#include "crjet/series_io.hpp"
#include "crjet/series_ops.hpp"

namespace crjet {

const char* to_string(MapJetErrc code) {
    switch (code) {
        case MapJetErrc::DivisibilityObstruction: return "DivisibilityObstruction";
        case MapJetErrc::LeviFlatInput: return "LeviFlatInput";
        case MapJetErrc::InconsistentJet: return "InconsistentJet";
        case MapJetErrc::JetArity: return "JetArity";
        case MapJetErrc::NotInvertible: return "NotInvertible";
    }
    return "unknown";
}

namespace {

template <typename S>
using Traits = ScalarTraits<S>;

template <typename S>
S from_exact(const ComplexRational& c) {
    if constexpr (std::is_same_v<S, Complex>)
        return c.to_complex();
    else
        return c;
}

template <typename S>
Series<S> from_exact(const TruncatedSeries& a) {
    if constexpr (std::is_same_v<S, Complex>)
        return to_float(a);
    else
        return a;
}

template <typename S>
S factorial_scalar(int n) {
    return Traits<S>::from_rational(Rational(factorial(n)));
}

template <typename S>
std::string scalar_text(const S& c) {
    return to_dsl(c);
}

template <typename S>
bool near(const S& a, const S& b, double tol) {
    return Traits<S>::is_zero(a - b, tol);
}

// a(x) / x^l for a univariate series vanishing to order >= l.
template <typename S>
Series<S> shift_down(const Series<S>& a, int l) {
    Series<S> r(a.variables(), std::max(a.order() - l, 0), a.tolerance());
    for (const auto& [m, c] : a.terms()) r.set(MultiIndex{m[0] - l}, c);
    return r;
}

template <typename S>
Series<S> shift_up(const Series<S>& a, int l) {
    Series<S> r(a.variables(), a.order() + l, a.tolerance());
    for (const auto& [m, c] : a.terms()) r.set(MultiIndex{m[0] + l}, c);
    return r;
}

template <typename S>
Series<S> chi_constant(int order, const S& c) {
    return Series<S>::constant(kChiVars, order, c);
}

// The coefficient of z^a t^s of a series over (z, x, t), as a series in x.
template <typename S>
Series<S> coefficient_in_x(const Series<S>& r, int a, int s) {
    return drop_variables(extract(extract(r, "z", a), "t", s), kChiVars);
}

// sum_r a_r(x) t^r / r! over (z, x, t). The a_r are padded with zeros: an
// unknown x^i coefficient of a_r only reaches x-degrees >= i, which the
// caller accounts for by capping extracted coefficients at min order(a_r).
template <typename S>
Series<S> assemble_conjugate(const std::vector<Series<S>>& a, int first, int order) {
    Series<S> out(kSurfaceVars, order);
    for (int r = first; r < static_cast<int>(a.size()); ++r) {
        const S inv = Traits<S>::from_int(1) / factorial_scalar<S>(r);
        for (const auto& [m, c] : a[static_cast<std::size_t>(r)].terms()) out.add_to(MultiIndex{0, m[0], r}, c * inv);
    }
    return out;
}

template <typename S>
std::string lowest_term(const Series<S>& s) {
    const auto& [m, c] = *s.terms().begin();
    return scalar_text(c) + " at " + monomial_to_dsl(s.variables(), m);
}

}  // namespace

template <typename Scalar>
Series<Scalar> mapping_residual(const Series<Scalar>& q, const Series<Scalar>& q2, const Series<Scalar>& f,
                                const Series<Scalar>& g, const Series<Scalar>& fbar, const Series<Scalar>& gbar) {
    const auto z = Series<Scalar>::variable(q.variables(), q.order(), q.variables()[0], q.tolerance());
    const Series<Scalar> fzq = compose(f, {z, q});
    const Series<Scalar> gzq = compose(g, {z, q});
    return gzq - compose(q2, {fzq, fbar, gbar});
}

template Series<ComplexRational> mapping_residual(const Series<ComplexRational>&, const Series<ComplexRational>&,
                                                  const Series<ComplexRational>&, const Series<ComplexRational>&,
                                                  const Series<ComplexRational>&, const Series<ComplexRational>&);
template Series<Complex> mapping_residual(const Series<Complex>&, const Series<Complex>&, const Series<Complex>&,
                                          const Series<Complex>&, const Series<Complex>&, const Series<Complex>&);

MapGerm identity_map(int order) {
    return {TruncatedSeries::variable(kMapVars, order, "z"), TruncatedSeries::variable(kMapVars, order, "w")};
}

MapGerm compose_maps(const MapGerm& h1, const MapGerm& h2) {
    return {compose(h1.F, {h2.F, h2.G}), compose(h1.G, {h2.F, h2.G})};
}

MapGerm inverse_map(const MapGerm& h) {
    const int n = h.order();
    const MultiIndex ez{1, 0}, ew{0, 1};
    const ComplexRational a = h.F.coefficient(ez), b = h.F.coefficient(ew);
    const ComplexRational c = h.G.coefficient(ez), d = h.G.coefficient(ew);
    const ComplexRational det = a * d - b * c;
    if (det.is_zero()) throw MapJetError(MapJetErrc::NotInvertible, "H'(0) is singular");
    TruncatedSeries nf = h.F.truncated(n), ng = h.G.truncated(n);
    nf.set(ez, 0);
    nf.set(ew, 0);
    ng.set(ez, 0);
    ng.set(ew, 0);
    const auto z = TruncatedSeries::variable(kMapVars, n, "z");
    const auto w = TruncatedSeries::variable(kMapVars, n, "w");
    // K = L^{-1} (id - N o K) where H = L + N.
    MapGerm k{TruncatedSeries(kMapVars, n), TruncatedSeries(kMapVars, n)};
    for (int it = 0; it <= n + 1; ++it) {
        const TruncatedSeries u = z - compose(nf, {k.F, k.G});
        const TruncatedSeries v = w - compose(ng, {k.F, k.G});
        MapGerm next{(u * d - v * b) * (ComplexRational(1) / det), (v * a - u * c) * (ComplexRational(1) / det)};
        if (next.F == k.F && next.G == k.G) break;
        k = std::move(next);
    }
    return k;
}

MapJet jet_of(const MapGerm& h, int k) {
    if (k > h.order())
        throw MapJetError(MapJetErrc::JetArity, "requested " + std::to_string(k) + "-jet of a map known to order " +
                                                    std::to_string(h.order()));
    MapJet jet;
    jet.k = k;
    for (int d = 1; d <= k; ++d)
        for (int i = d; i >= 0; --i) {
            const int j = d - i;
            const ComplexRational scale(Rational(factorial(i) * factorial(j)));
            const ComplexRational f = h.F.coefficient(MultiIndex{i, j}) * scale;
            const ComplexRational g = h.G.coefficient(MultiIndex{i, j}) * scale;
            if (!f.is_zero()) jet.lambda[{i, j}] = f;
            if (!g.is_zero()) jet.mu[{i, j}] = g;
        }
    return jet;
}

FloatMapJet to_float(const MapJet& jet) {
    FloatMapJet out;
    out.k = jet.k;
    for (const auto& [key, c] : jet.lambda) out.lambda[key] = c.to_complex();
    for (const auto& [key, c] : jet.mu) out.mu[key] = c.to_complex();
    return out;
}

template <typename Scalar>
std::pair<Series<Scalar>, Series<Scalar>> jet_polynomials(const BasicMapJet<Scalar>& jet, int order) {
    Series<Scalar> f(kMapVars, order), g(kMapVars, order);
    for (const auto& [key, c] : jet.lambda)
        if (key.first + key.second <= jet.k)
            f.set(MultiIndex{key.first, key.second},
                  c / (factorial_scalar<Scalar>(key.first) * factorial_scalar<Scalar>(key.second)));
    for (const auto& [key, c] : jet.mu)
        if (key.first + key.second <= jet.k)
            g.set(MultiIndex{key.first, key.second},
                  c / (factorial_scalar<Scalar>(key.first) * factorial_scalar<Scalar>(key.second)));
    return {f, g};
}

template std::pair<TruncatedSeries, TruncatedSeries> jet_polynomials(const MapJet&, int);
template std::pair<FloatSeries, FloatSeries> jet_polynomials(const FloatMapJet&, int);

MappingResidual verify_mapping(const NormalFormSurface& m, const NormalFormSurface& m2, const MapGerm& h) {
    const TruncatedSeries fbar = embed(conjugate_series(h.F), kSurfaceVars, {"x", "t"});
    const TruncatedSeries gbar = embed(conjugate_series(h.G), kSurfaceVars, {"x", "t"});
    MappingResidual out;
    out.residual = mapping_residual(m.Q, m2.Q, h.F, h.G, fbar, gbar);
    out.certified_order = out.residual.order();
    out.zero = out.residual.is_zero();
    if (!out.zero) out.witness = lowest_term(out.residual);
    return out;
}

NormalPreservation normal_preservation_checks(const MapGerm& h, bool mapping_verified) {
    NormalPreservation r;
    const TruncatedSeries g0 = restrict_zero(h.G, "w");
    r.segre_preserved = g0.is_zero();
    if (!r.segre_preserved) r.segre_witness = "G(z,0) has " + lowest_term(g0);
    r.triangular = h.G.coefficient(MultiIndex{1, 0}).is_zero();
    r.gw = h.G.coefficient(MultiIndex{0, 1});
    r.biholomorphic = !(h.F.coefficient(MultiIndex{1, 0}) * r.gw).is_zero();
    if (mapping_verified) r.gw_real = r.gw.is_real();
    return r;
}

SegreJetResult segre_restriction_direct(const MapGerm& h, int k) {
    if (k > h.order())
        throw MapJetError(MapJetErrc::JetArity, "k = " + std::to_string(k) + " exceeds the map order");
    const ComplexRational kf(Rational(factorial(k)));
    SegreJetResult r;
    r.k = k;
    r.F_wk = drop_variables(extract(h.F, "w", k), kZVars) * kf;
    r.G_wk = drop_variables(extract(h.G, "w", k), kZVars) * kf;
    r.provenance = Provenance::Direct;
    return r;
}

namespace {

template <typename S>
struct ReconstructContext {
    Series<S> Q, Q2;
    int m0 = 0, alpha0 = 0, mu0 = 0, l = 0;
    Series<S> qa, qa2, q10;
    double tol = 0.0;
    bool roots = false;
};

// conj F(x, 0) from q'_{a0 m0}(conj F(x,0)) = E(x)^l q_{a0 m0}(x), with the
// constant c of E eliminated through q'_x(0) conj F_z(0) = c q_x(0).
template <typename S>
Series<S> solve_fbar0(const ReconstructContext<S>& ctx, const BasicMapJet<S>& jet) {
    const int l = ctx.l;
    const S fz = jet.F(1, 0), fw = jet.F(0, 1);
    const S fzb = Traits<S>::conj(fz);
    const S one = Traits<S>::from_int(1);
    if (ctx.roots) {
        const Series<S> q = kth_root(ctx.qa, l);
        const Series<S> q2 = kth_root(ctx.qa2, l);
        const S c = q2.coefficient(MultiIndex{1}) * fzb / q.coefficient(MultiIndex{1});
        Series<S> e = chi_constant<S>(q.order(), c);
        if (ctx.m0 == 1) {
            const Series<S> base = chi_constant<S>(ctx.q10.order(), one) + ctx.q10 * (fw / fz);
            e = e * reciprocal(kth_root(base, l));
        }
        return compose(reversion(q2), {e * q});
    }
    const Series<S> p = shift_down(ctx.qa, l);
    const Series<S> p2 = shift_down(ctx.qa2, l);
    const S p0 = p.constant_term(), p20 = p2.constant_term();
    Series<S> rhs = p * (p20 * scalar_pow(fzb, l) / p0);
    if (ctx.m0 == 1) {
        const Series<S> base = chi_constant<S>(ctx.q10.order(), one) + ctx.q10 * (fw / fz);
        rhs = rhs * reciprocal(base);
    }
    // Solve p2(x u) u^l = rhs with u(0) = conj F_z(0), one order per step.
    const int order = std::min(p2.order(), rhs.order());
    const auto x = Series<S>::variable(kChiVars, order, "x");
    Series<S> u = chi_constant<S>(order, fzb);
    const S slope = Traits<S>::from_int(l) * p20 * scalar_pow(fzb, l - 1);
    for (int n = 1; n <= order; ++n) {
        const Series<S> phi = compose(p2, {x * u}) * pow(u, l) - rhs.truncated(order);
        u.set(MultiIndex{n}, u.coefficient(MultiIndex{n}) - phi.coefficient(MultiIndex{n}) / slope);
    }
    return shift_up(u, 1);
}

template <typename S>
SegreReconstruction<S> reconstruct(const ReconstructContext<S>& ctx, const BasicMapJet<S>& jet_in, int k) {
    if (jet_in.k < k + 1)
        throw MapJetError(MapJetErrc::JetArity, "H_{w^" + std::to_string(k) + "}(z,0) needs the " +
                                                    std::to_string(k + 1) + "-jet, got the " +
                                                    std::to_string(jet_in.k) + "-jet");
    const S fz = jet_in.F(1, 0), gw = jet_in.G(0, 1);
    if (Traits<S>::is_zero(fz * gw, ctx.tol))
        throw MapJetError(MapJetErrc::InconsistentJet, "F_z(0) G_w(0) = 0: jet is not biholomorphic");
    if (!Traits<S>::is_zero(jet_in.G(1, 0), ctx.tol))
        throw MapJetError(MapJetErrc::InconsistentJet, "G_z(0) != 0: jet does not preserve the Segre variety");

    SegreReconstruction<S> out;
    const int a0 = ctx.alpha0, m0 = ctx.mu0;
    const int n = std::min(ctx.Q.order(), ctx.Q2.order());
    const Series<S> Q = ctx.Q.truncated(n), Q2 = ctx.Q2.truncated(n);

    std::vector<Series<S>> A{solve_fbar0(ctx, jet_in)};
    std::vector<Series<S>> B{Series<S>(kChiVars, n)};
    std::vector<int> known_a{A[0].order()}, known_b{n};

    // Map polynomials from the (j+1)-jet, with the unknown G_{z^a0 w^(m0+j)} entry removed.
    auto polys = [&](int j) {
        BasicMapJet<S> jet = jet_in;
        jet.k = j + 1;
        const S entry = jet.G(a0, m0 + j);
        jet.mu.erase({a0, m0 + j});
        auto [f, g] = jet_polynomials(jet, n);
        return std::make_tuple(f, g, entry, a0 + m0 + j <= j + 1);
    };
    auto residual = [&](const Series<S>& f, const Series<S>& g) {
        return mapping_residual(Q, Q2, f, g, assemble_conjugate(A, 0, n), assemble_conjugate(B, 1, n));
    };
    // Coefficient of z^a t^s in x, cut at the x-order certified by the known A_r, B_s.
    auto coefficient = [&](const Series<S>& res, int a, int s) {
        int cap = n - a - s;
        for (int o : known_a) cap = std::min(cap, o);
        for (int o : known_b) cap = std::min(cap, o);
        if (cap < 0)
            throw MapJetError(MapJetErrc::JetArity, "working order " + std::to_string(n) +
                                                        " too small for H_{w^" + std::to_string(k) + "}(z,0)");
        return coefficient_in_x(res, a, s).truncated(cap);
    };
    auto fill_b = [&](int upto, const Series<S>& f, const Series<S>& g) {
        for (int s = static_cast<int>(B.size()); s <= upto; ++s) {
            B.push_back(Series<S>(kChiVars, n));
            B.back() = coefficient(residual(f, g), 0, s) * factorial_scalar<S>(s);
            known_b.push_back(B.back().order());
        }
    };
    auto entry_scale = [&](int j) { return factorial_scalar<S>(a0) * factorial_scalar<S>(m0 + j); };
    // For m0 >= 2 the coefficient of conj G_{w^(j+1)} does not involve conj F_{w^j}.
    const int b_ahead = m0 >= 1 ? 1 : 0;

    // Step 0: the remaining coefficient at z^a0 t^m0 must be a constant.
    {
        auto [f, g, entry, in_jet] = polys(0);
        fill_b(b_ahead, f, g);
        const Series<S> d = coefficient(residual(f, g), a0, m0);
        Series<S> rest = d;
        rest.set(MultiIndex{0}, Traits<S>::from_int(0));
        if (!rest.is_zero())
            out.warnings.push_back("jet data inconsistent with the reconstructed conj F(x,0): residual " +
                                   lowest_term(rest));
        else if (in_jet && !near<S>(entry / entry_scale(0), -d.constant_term(), ctx.tol))
            out.warnings.push_back("G_{z^" + std::to_string(a0) + " w^" + std::to_string(m0) +
                                   "}(0) disagrees with the value forced by the surfaces");
    }

    for (int j = 1; j <= k; ++j) {
        auto [f, g, entry, in_jet] = polys(j);
        A.push_back(Series<S>(kChiVars, n));
        fill_b(j + b_ahead, f, g);
        const Series<S> d0 = coefficient(residual(f, g), a0, m0 + j);
        A.back() = chi_constant<S>(n, Traits<S>::from_int(1));
        const Series<S> d1 = coefficient(residual(f, g), a0, m0 + j);
        A.back() = chi_constant<S>(n, Traits<S>::from_int(2));
        const Series<S> d2 = coefficient(residual(f, g), a0, m0 + j);
        const Series<S> lin = d0 - d1;
        if (max_coefficient_distance(d0 - d2, lin * Traits<S>::from_int(2)) > std::max(ctx.tol, 1e-300))
            throw std::logic_error("mapping identity is not affine in conj F_{w^j}(x,0)");
        if (lin.is_zero())
            throw MapJetError(MapJetErrc::InconsistentJet, "the coefficient of conj F_{w^" + std::to_string(j) +
                                                               "} vanishes to the working order");
        const int nu = *vanishing_order(lin).value;
        out.nu = nu;
        const S target = Traits<S>::conj(jet_in.F(0, j));
        S c;
        if (nu == 0) {
            c = lin.constant_term() * target - d0.constant_term();
        } else {
            c = -d0.constant_term();
            for (int i = 1; i < nu; ++i)
                if (!Traits<S>::is_zero(d0.coefficient(MultiIndex{i}), ctx.tol))
                    throw MapJetError(MapJetErrc::DivisibilityObstruction,
                                      "dividend has x^" + std::to_string(i) + " coefficient " +
                                          scalar_text(d0.coefficient(MultiIndex{i})) + " below nu = " +
                                          std::to_string(nu));
        }
        Series<S> dividend = d0 + chi_constant<S>(d0.order(), c);
        for (int i = 0; i < nu; ++i) dividend.set(MultiIndex{i}, Traits<S>::from_int(0));
        if (dividend.order() < nu)
            throw MapJetError(MapJetErrc::JetArity, "working order " + std::to_string(n) +
                                                        " too small for H_{w^" + std::to_string(k) + "}(z,0)");
        A.back() = dividend.is_zero() ? Series<S>(kChiVars, dividend.order() - nu)
                                      : divide(dividend, lin.truncated(dividend.order()));
        known_a.push_back(A.back().order());
        if (!near<S>(A.back().constant_term(), target, ctx.tol))
            throw MapJetError(MapJetErrc::InconsistentJet,
                              "reconstructed conj F_{w^" + std::to_string(j) + "}(0) = " +
                                  scalar_text(A.back().constant_term()) + " but the jet gives " + scalar_text(target));
        if (in_jet && !near<S>(entry / entry_scale(j), c, ctx.tol))
            out.warnings.push_back("G_{z^" + std::to_string(a0) + " w^" + std::to_string(m0 + j) +
                                   "}(0) disagrees with the value forced by the surfaces");
    }
    if (static_cast<int>(B.size()) <= k) {
        auto [f, g, entry, in_jet] = polys(k);
        fill_b(k, f, g);
    }
    out.fbar_w = A;
    out.gbar_w = std::vector<Series<S>>(B.begin(), B.begin() + k + 1);
    out.result.k = k;
    out.result.provenance = Provenance::Reconstructed;
    out.result.F_wk = rename(conjugate_series(A[static_cast<std::size_t>(k)]), kZVars);
    out.result.G_wk = rename(conjugate_series(B[static_cast<std::size_t>(k)]), kZVars);
    return out;
}

template <typename S>
ReconstructContext<S> make_context(const NormalFormSurface& m, const NormalFormSurface& m2, double tol, bool roots) {
    const InvariantReport inv = compute_invariants(m);
    const InvariantReport inv2 = compute_invariants(m2);
    if (!inv.m0 || !inv2.m0)
        throw MapJetError(MapJetErrc::LeviFlatInput, "no nonzero q_{alpha mu} below order " +
                                                         std::to_string(std::min(m.order(), m2.order())));
    if (inv.m0 != inv2.m0 || inv.alpha0 != inv2.alpha0 || inv.l != inv2.l)
        throw MapJetError(MapJetErrc::InconsistentJet, "no map sends M into M2: " + describe(inv) + " vs " + describe(inv2));
    ReconstructContext<S> ctx;
    ctx.Q = from_exact<S>(m.Q);
    ctx.Q2 = from_exact<S>(m2.Q);
    ctx.m0 = *inv.m0;
    ctx.alpha0 = *inv.alpha0;
    ctx.mu0 = *inv.mu0;
    ctx.l = *inv.l;
    ctx.qa = from_exact<S>(q_function(m, ctx.alpha0, ctx.mu0));
    ctx.qa2 = from_exact<S>(q_function(m2, ctx.alpha0, ctx.mu0));
    ctx.q10 = from_exact<S>(q_function(m, 1, 0));
    ctx.tol = tol;
    ctx.roots = roots;
    return ctx;
}

}  // namespace

SegreReconstruction<ComplexRational> segre_jet_reconstruct(const NormalFormSurface& m, const NormalFormSurface& m2,
                                                           const MapJet& jet, int k, ReconstructOptions opt) {
    return reconstruct(make_context<ComplexRational>(m, m2, 0.0, opt.root_route), jet, k);
}

SegreReconstruction<Complex> segre_jet_reconstruct_float(const NormalFormSurface& m, const NormalFormSurface& m2,
                                                         const MapJet& jet, int k, ReconstructOptions opt) {
    return reconstruct(make_context<Complex>(m, m2, opt.tolerance, true), to_float(jet), k);
}

InvarianceReport invariance_check(const NormalFormSurface& m, const NormalFormSurface& m2, const MapGerm& h) {
    InvarianceReport r;
    r.source = compute_invariants(m);
    r.target = compute_invariants(m2);
    r.mapping_verified = verify_mapping(m, m2, h).zero;
    auto compare = [&](const char* name, const std::optional<int>& a, const std::optional<int>& b) {
        if (a == b) return;
        auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("unknown"); };
        r.mismatches.push_back(std::string(name) + ": " + show(a) + " != " + show(b));
    };
    compare("m0", r.source.m0, r.target.m0);
    compare("alpha0", r.source.alpha0, r.target.alpha0);
    compare("mu0", r.source.mu0, r.target.mu0);
    compare("l", r.source.l, r.target.l);
    compare("beta0", r.source.beta0, r.target.beta0);
    r.agree = r.mismatches.empty();

    if (r.source.m0 && r.target.m0 && (r.source.alpha0 != r.target.alpha0 || r.source.mu0 != r.target.mu0)) {
        // The surface with the smaller (alpha0 + mu0, mu0) forces a nonzero
        // coefficient in the mapping identity of the direction leaving it.
        const auto key = [](const InvariantReport& v) { return std::make_pair(*v.m0, *v.mu0); };
        const bool source_smaller = key(r.source) < key(r.target);
        const InvariantReport& low = source_smaller ? r.source : r.target;
        try {
            const MappingResidual res = source_smaller ? verify_mapping(m, m2, h) : verify_mapping(m2, m, inverse_map(h));
            const TruncatedSeries coeff = coefficient_in_x(res.residual, *low.alpha0, *low.mu0);
            r.witness = std::string(source_smaller ? "M -> M2" : "M2 -> M") + " identity at z^" +
                        std::to_string(*low.alpha0) + "*t^" + std::to_string(*low.mu0) + ": " + to_dsl(coeff) +
                        (coeff.is_zero() ? "" : " != 0");
        } catch (const MapJetError& e) {
            r.witness = e.what();
        }
    }

    if (r.mapping_verified && r.source.beta0 && r.source.beta0 == r.target.beta0) {
        const int b0 = *r.source.beta0;
        const ComplexRational fz = h.F.coefficient(MultiIndex{1, 0});
        const ComplexRational fw = h.F.coefficient(MultiIndex{0, 1});
        const ComplexRational gw = h.G.coefficient(MultiIndex{0, 1});
        const TruncatedSeries fbar0 = drop_variables(embed(conjugate_series(restrict_zero(h.F, "w")), kChiVars, {"x", "x"}), kChiVars);
        const TruncatedSeries lhs = r_function(m, b0) * gw;
        TruncatedSeries factor = r_function(m, 1) * fw;
        factor.add_to(MultiIndex{0}, fz);
        const TruncatedSeries rhs = compose(r_function(m2, b0), {fbar0}) * pow(factor, b0);
        const int order = std::min(lhs.order(), rhs.order());
        r.beta_identity = lhs.truncated(order) == rhs.truncated(order);
    }
    return r;
}

DeterminationVerdict determination_experiment(const NormalFormSurface& m, const MapGerm& h1, const MapGerm& h2, int k) {
    (void)m;
    DeterminationVerdict v;
    v.k = k;
    v.jets_equal = jet_of(h1, k) == jet_of(h2, k);
    v.compared_order = std::min(h1.order(), h2.order());
    const TruncatedSeries df = h1.F.truncated(v.compared_order) - h2.F.truncated(v.compared_order);
    const TruncatedSeries dg = h1.G.truncated(v.compared_order) - h2.G.truncated(v.compared_order);
    v.maps_equal = df.is_zero() && dg.is_zero();
    if (!df.is_zero())
        v.first_disagreement = "F differs by " + lowest_term(df);
    else if (!dg.is_zero())
        v.first_disagreement = "G differs by " + lowest_term(dg);
    return v;
}

DynamicsVerdict dynamics_check(const NormalFormSurface& m, const MapGerm& h) {
    DynamicsVerdict v;
    const MappingResidual res = verify_mapping(m, m, h);
    if (!res.zero) {
        v.skipped_reason = "H does not map M into itself: residual " + *res.witness;
        return v;
    }
    const MapJet j1 = jet_of(h, 1);
    if (!(j1 == jet_of(identity_map(1), 1))) {
        v.skipped_reason = "H is not tangent to the identity";
        return v;
    }
    const InvariantReport inv = compute_invariants(m);
    if (!inv.m0) {
        v.skipped_reason = "M is Levi-flat up to order " + std::to_string(inv.certified_order);
        return v;
    }
    v.precondition_ok = true;
    const auto rec = segre_jet_reconstruct(m, m, j1, 0);
    const TruncatedSeries z = TruncatedSeries::variable(kZVars, rec.result.F_wk.order(), "z");
    v.reconstructed_identity = rec.result.F_wk == z && rec.result.G_wk.is_zero();
    const SegreJetResult direct = segre_restriction_direct(h, 0);
    v.stored_identity = direct.F_wk == TruncatedSeries::variable(kZVars, direct.F_wk.order(), "z") && direct.G_wk.is_zero();
    if (!v.reconstructed_identity)
        v.witness = "reconstructed H(z,0) = (" + to_dsl(rec.result.F_wk) + ", " + to_dsl(rec.result.G_wk) + ")";
    else if (!v.stored_identity)
        v.witness = "stored H(z,0) = (" + to_dsl(direct.F_wk) + ", " + to_dsl(direct.G_wk) + ")";
    return v;
}

}  // namespace crjet
