#ifndef CRJET_HYPERSURFACE_HPP
#define CRJET_HYPERSURFACE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crjet/series.hpp"

namespace crjet {

// Variable conventions: z, x = conj(z), t = conj(w) for the complex defining
// function Q(z, x, t); s = Re w for the real graph phi(z, x, s).
inline const Variables kSurfaceVars{"z", "x", "t"};
inline const Variables kGraphVars{"z", "x", "s"};
inline const Variables kChiVars{"x"};

class SurfaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Im w = phi(z, conj z, Re w) in normal coordinates.
struct RealGraph {
    TruncatedSeries phi;
    int order() const { return phi.order(); }
};

// w = Q(z, conj z, conj w).
struct NormalFormSurface {
    TruncatedSeries Q;
    int order() const { return Q.order(); }
};

// Violations of reality (phi real-valued) and normality (phi(z,0,s) = phi(0,x,s) = 0).
std::vector<std::string> check_real_graph(const RealGraph& g);

// Solves w = conj(w) + 2i*phi(z, x, (w + conj(w))/2) for w = Q(z, x, t).
// Throws SurfaceError when g violates its invariants.
NormalFormSurface from_real_graph(const RealGraph& g);

struct NormalityReport {
    bool pass = true;
    std::vector<std::string> violations;  // offending monomials with coefficients
    int certified_order = 0;
};

// Q(z,0,t) = t and Q(0,x,t) = t.
NormalityReport check_normal(const NormalFormSurface& s);

struct RealityReport {
    bool pass = true;
    TruncatedSeries residual;  // Q(z, x, conj(Q)(x, z, t)) - t over (z, x, t)
    int certified_order = 0;
};

RealityReport check_reality(const NormalFormSurface& s);

// q_{alpha mu}(x) = d^alpha/dz^alpha d^mu/dt^mu Q at (0, x, 0), as series in x.
TruncatedSeries q_function(const NormalFormSurface& s, int alpha, int mu);
using QTable = std::map<std::pair<int, int>, TruncatedSeries>;
QTable q_table(const NormalFormSurface& s, int max_m);

// r_beta(x, 0): coefficient of z^beta in Q(z, x, 0), as series in x.
TruncatedSeries r_function(const NormalFormSurface& s, int beta);

struct InvariantReport {
    std::optional<int> m0;  // nullopt: infinite up to certified_order
    std::optional<int> alpha0;
    std::optional<int> mu0;
    std::optional<int> l;
    std::optional<int> beta0;  // nullopt: no r_beta(x,0) != 0 below certified_order
    bool finite_type = false;
    bool levi_flat_unknown = false;  // true: no nonzero q_{alpha mu} found below the order
    int certified_order = 0;
    std::vector<std::string> warnings;
};

InvariantReport compute_invariants(const NormalFormSurface& s);

std::string describe(const InvariantReport& r);

// (z, w) -> (lambda z, rho w) with rho real: Q becomes rho * Q(z/lambda, x/conj(lambda), t/rho).
NormalFormSurface dilate(const NormalFormSurface& s, const ComplexRational& lambda, const Rational& rho);

}  // namespace crjet

#endif  // CRJET_HYPERSURFACE_HPP
