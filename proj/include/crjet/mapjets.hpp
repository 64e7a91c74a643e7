#ifndef CRJET_MAPJETS_HPP
#define CRJET_MAPJETS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crjet/hypersurface.hpp"

namespace crjet {

inline const Variables kMapVars{"z", "w"};
inline const Variables kZVars{"z"};

// H(z, w) = (F, G), both series in (z, w) vanishing at the origin.
struct MapGerm {
    TruncatedSeries F;
    TruncatedSeries G;
    int order() const { return std::min(F.order(), G.order()); }
};

MapGerm identity_map(int order);
// H1 o H2.
MapGerm compose_maps(const MapGerm& h1, const MapGerm& h2);
// Compositional inverse; throws MapJetError when H'(0) is singular.
MapGerm inverse_map(const MapGerm& h);

// Derivative tables lambda^{ij} = F_{z^i w^j}(0), mu^{ij} = G_{z^i w^j}(0),
// 1 <= i + j <= k. Absent entries are zero.
template <typename Scalar>
struct BasicMapJet {
    int k = 0;
    std::map<std::pair<int, int>, Scalar> lambda;
    std::map<std::pair<int, int>, Scalar> mu;

    Scalar F(int i, int j) const { return lookup(lambda, i, j); }
    Scalar G(int i, int j) const { return lookup(mu, i, j); }

    friend bool operator==(const BasicMapJet& a, const BasicMapJet& b) {
        return a.k == b.k && a.lambda == b.lambda && a.mu == b.mu;
    }

private:
    static Scalar lookup(const std::map<std::pair<int, int>, Scalar>& t, int i, int j) {
        auto it = t.find({i, j});
        return it == t.end() ? ScalarTraits<Scalar>::from_int(0) : it->second;
    }
};

using MapJet = BasicMapJet<ComplexRational>;
using FloatMapJet = BasicMapJet<Complex>;

MapJet jet_of(const MapGerm& h, int k);
FloatMapJet to_float(const MapJet& jet);
// The polynomial map whose jet at 0 is `jet`, truncated at `order`.
template <typename Scalar>
std::pair<Series<Scalar>, Series<Scalar>> jet_polynomials(const BasicMapJet<Scalar>& jet, int order);

enum class MapJetErrc { DivisibilityObstruction, LeviFlatInput, InconsistentJet, JetArity, NotInvertible };
const char* to_string(MapJetErrc code);

class MapJetError : public std::runtime_error {
public:
    MapJetError(MapJetErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    MapJetErrc code() const { return code_; }

private:
    MapJetErrc code_;
};

struct MappingResidual {
    TruncatedSeries residual;  // G(z,Q) - Q'(F(z,Q), conj F(x,t), conj G(x,t)) over (z, x, t)
    bool zero = false;
    std::optional<std::string> witness;  // lowest monomial of a nonzero residual
    int certified_order = 0;
};

MappingResidual verify_mapping(const NormalFormSurface& m, const NormalFormSurface& m2, const MapGerm& h);

struct NormalPreservation {
    bool segre_preserved = false;  // G(z, 0) = 0
    std::optional<std::string> segre_witness;
    bool triangular = false;       // G_z(0) = 0
    bool biholomorphic = false;    // F_z(0) G_w(0) != 0
    std::optional<bool> gw_real;   // set only when the mapping was verified
    ComplexRational gw;
    bool pass() const { return segre_preserved && triangular && biholomorphic && gw_real.value_or(true); }
};

NormalPreservation normal_preservation_checks(const MapGerm& h, bool mapping_verified);

enum class Provenance { Direct, Reconstructed };

// H_{w^k}(z, 0) as series in z.
template <typename Scalar>
struct BasicSegreJet {
    int k = 0;
    Series<Scalar> F_wk;
    Series<Scalar> G_wk;
    Provenance provenance = Provenance::Direct;
};

using SegreJetResult = BasicSegreJet<ComplexRational>;
using FloatSegreJetResult = BasicSegreJet<Complex>;

SegreJetResult segre_restriction_direct(const MapGerm& h, int k);

template <typename Scalar>
struct SegreReconstruction {
    BasicSegreJet<Scalar> result;
    std::vector<Series<Scalar>> fbar_w;  // conj F_{w^r}(x, 0), r = 0..k, series in x
    std::vector<Series<Scalar>> gbar_w;  // conj G_{w^s}(x, 0), s = 0..k, series in x
    int nu = 0;                          // vanishing order of d/dx q'_{alpha0 mu0}
    std::vector<std::string> warnings;
};

enum class Backend { Exact, Float };

struct ReconstructOptions {
    // Zero test for the float backend (exact backend ignores it).
    double tolerance = 1e-9;
    // Solve for conj F(x, 0) through l-th roots and reversion instead of the
    // branch-free order-by-order solve.
    bool root_route = false;
};

// H_{w^k}(z, 0) from the jet j^{k+1}_0 H of a map sending m into m2.
SegreReconstruction<ComplexRational> segre_jet_reconstruct(const NormalFormSurface& m, const NormalFormSurface& m2,
                                                           const MapJet& jet, int k, ReconstructOptions opt = {});
SegreReconstruction<Complex> segre_jet_reconstruct_float(const NormalFormSurface& m, const NormalFormSurface& m2,
                                                         const MapJet& jet, int k, ReconstructOptions opt = {});

struct InvarianceReport {
    InvariantReport source;
    InvariantReport target;
    bool mapping_verified = false;
    bool agree = false;
    std::vector<std::string> mismatches;
    std::optional<std::string> witness;  // contradiction series when (alpha0, mu0) differ
    std::optional<bool> beta_identity;   // r_{b0}(x,0) G_w(0) = r'_{b0}(conj F(x,0), 0) (F_z(0) + F_w(0) r_1(x,0))^{b0}
    bool pass() const { return agree && beta_identity.value_or(true); }
};

InvarianceReport invariance_check(const NormalFormSurface& m, const NormalFormSurface& m2, const MapGerm& h);

struct DeterminationVerdict {
    int k = 0;
    bool jets_equal = false;
    bool maps_equal = false;
    std::optional<std::string> first_disagreement;
    int compared_order = 0;
    bool vacuous() const { return !jets_equal; }
    bool pass() const { return !jets_equal || maps_equal; }
};

DeterminationVerdict determination_experiment(const NormalFormSurface& m, const MapGerm& h1, const MapGerm& h2, int k);

struct DynamicsVerdict {
    bool precondition_ok = false;
    std::string skipped_reason;
    bool reconstructed_identity = false;
    bool stored_identity = false;
    std::optional<std::string> witness;
    bool pass() const { return precondition_ok && reconstructed_identity && stored_identity; }
};

DynamicsVerdict dynamics_check(const NormalFormSurface& m, const MapGerm& h);

// Residual of the mapping identity for any coefficient ring. fbar, gbar are
// conj F(x, t), conj G(x, t) expressed over (z, x, t).
template <typename Scalar>
Series<Scalar> mapping_residual(const Series<Scalar>& q, const Series<Scalar>& q2, const Series<Scalar>& f,
                                const Series<Scalar>& g, const Series<Scalar>& fbar, const Series<Scalar>& gbar);

}  // namespace crjet

#endif  // CRJET_MAPJETS_HPP
