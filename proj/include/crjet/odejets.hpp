#ifndef CRJET_ODEJETS_HPP
#define CRJET_ODEJETS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crjet/dsl.hpp"
#include "crjet/linalg.hpp"
#include "crjet/series.hpp"

namespace crjet {

inline constexpr int kDefaultOdeWorkingOrder = 24;

// x^(gamma+1) y' = p(x, y) / q(x, y) for y = (y1..yn), with the parameters
// theta already substituted. p and q are polynomials over (x, y1..yn); their
// truncation order bounds the x-orders at which equations are trusted.
struct SingularODE {
    int gamma = 0;
    int n = 1;
    std::vector<RealSeries> p;
    RealSeries q;
    std::vector<Rational> theta;

    const Variables& vars() const { return q.variables(); }
    int order() const { return q.order(); }
};

enum class OdeErrc { InvalidOde, InconsistentSeed, WrongGamma };
const char* to_string(OdeErrc code);

class OdeError : public std::runtime_error {
public:
    OdeError(OdeErrc code, const std::string& what, std::optional<int> order = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), order_(order) {}
    OdeErrc code() const { return code_; }
    // The x-order of the contradicting equation, for InconsistentSeed.
    std::optional<int> order() const { return order_; }

private:
    OdeErrc code_;
    std::optional<int> order_;
};

// Validates arity, matching truncation orders and q(0, 0) != 0.
SingularODE make_ode(int gamma, std::vector<RealSeries> p, RealSeries q, std::vector<Rational> theta = {});

// ODE from a parsed document. The literals are exact polynomials, so the
// truncation is raised to order + gamma to keep every equation up to the
// working order's window trustworthy.
SingularODE ode_from_document(const Document& doc);
// Real polynomial over `vars` from a series literal.
RealSeries parse_real_series(const std::string& text, const Variables& vars, int order);

// Taylor coefficients a_s = y^(s)(0)/s!, indexed by s; each entry has n components.
using CoefficientTable = std::vector<std::vector<Rational>>;

enum class CoefficientStatus { Resolved, Deferred, Free };
const char* to_string(CoefficientStatus status);

// One unknown order s past the seed. The frontier matrix is the coefficient of
// a_s in the x^s equation: s I - f_y(0, y(0)) for gamma = 0, -f_y(0, y(0)) otherwise.
// Resolved: the frontier alone solves for a_s. Deferred: the frontier is
// singular but later equations pin a_s. Free: a_s is not pinned by the seed
// and the equations (its reported value is the particular choice zero, or
// follows from such a choice).
struct LedgerEntry {
    int order = 0;
    int frontier_rank = 0;
    int kernel_dimension = 0;
    CoefficientStatus status = CoefficientStatus::Resolved;
};

struct JetRecursionResult {
    int gamma = 0;
    int n = 1;
    int N = 0;
    int seed_order = 0;
    // Equations x^m were used for m <= equation_window; unknowns a_s with
    // N < s <= equation_window are auxiliary and not reported.
    int equation_window = 0;
    CoefficientTable coefficients;  // s = 0..N
    std::vector<LedgerEntry> ledger;  // s = seed_order+1..N
    // seed_order when nothing is free, otherwise nullopt (Undetermined(N)).
    std::optional<int> determination_order;

    std::vector<int> orders_with(CoefficientStatus status) const;
    bool has_free() const { return !orders_with(CoefficientStatus::Free).empty(); }
};

// Taylor expansion of p/q along y(x) = sum_s a_s x^s (a polynomial: missing
// coefficients are zero), up to x^order. Requires q(0, a_0) != 0.
RealSeries rhs_jet(const SingularODE& ode, const CoefficientTable& y, std::optional<int> order = std::nullopt);

// x^(gamma+1) y' - p/q along y, component-wise, up to x^order.
std::vector<RealSeries> ode_residual(const SingularODE& ode, const CoefficientTable& y, int order);

// Extends the seed (orders 0..seed.size()-1; an empty seed means y(0) = 0)
// to orders 0..N by coefficient matching. Throws OdeError(InconsistentSeed).
JetRecursionResult formal_coefficients(const SingularODE& ode, const CoefficientTable& seed, int N);

// Positive integers k <= N that are eigenvalues of f_y(0, 0). Requires gamma = 0.
std::vector<int> resonance_set(const SingularODE& ode, int N);

// f_y(0, 0) = (p_y q - p q_y)/q^2 at the origin.
RationalMatrix jacobian_at_origin(const SingularODE& ode);

// Matrices F_l = [x^l] f_y(x, yhat(x)), l = 0..L.
std::vector<RationalMatrix> linearization(const SingularODE& ode, const CoefficientTable& yhat, int L);

struct DeterminationOrder {
    std::optional<int> k;  // nullopt: Undetermined(N)
    int N = 0;
    // seed_order -> first free order when seeding through that order.
    std::vector<std::pair<int, int>> failures;
    bool undetermined() const { return !k.has_value(); }
};

// Least k such that seeding with base through order k pins every coefficient
// through N to the base value.
DeterminationOrder determination_order(const SingularODE& ode, const JetRecursionResult& base, int N);

// Blocks Y_r = (a_{r gamma + 1} .. a_{(r+1) gamma}). For each r, dims[j] is the
// dimension of the subspace of Y_r left undetermined by the linearized block
// equations r..r+j (dims[0] = dim ker Q0, dims[1] = dim(ker Q0 ∩ V1_r), ...).
struct ChainRow {
    int r = 0;
    std::vector<int> dims;
    std::optional<int> terminated_at;  // first j with dims[j] == 0
};

struct KernelChainReport {
    int gamma = 0;
    int n = 0;
    int bound = 0;  // n * gamma
    RationalMatrix q0;
    std::vector<ChainRow> rows;
    bool within_bound() const;
};

KernelChainReport kernel_chain_diagnostic(const SingularODE& ode, const JetRecursionResult& base, int r_max);

}  // namespace crjet

#endif  // CRJET_ODEJETS_HPP
