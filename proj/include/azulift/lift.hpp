#pragma once

#include "azulift/algebra.hpp"
#include "azulift/random.hpp"
#include "azulift/symbols.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace azulift {

/// Coefficients of eps in the chosen preimages: z' = z + seed * eps (both
/// coordinates for elements of a quadratic extension).
struct ScenarioSeeds {
    int64_t a1 = 0, x2 = 0, x3 = 0, mu2 = 0, mu3 = 0, mu23 = 0, d = 0;

    [[nodiscard]] bool all_zero() const { return !a1 && !x2 && !x3 && !mu2 && !mu3 && !mu23 && !d; }
    bool operator==(const ScenarioSeeds&) const = default;
};

/// Presentation of the degree-8 algebra D over K: a1; (a2, x2); (a3, x3); d,
/// with x2, x3 = u + v sqrt(a1) in L = K(sqrt a1).
struct LiftScenario {
    Field field = Field::rationals();
    int trunc = 3;
    Rational a1, a2, a3;
    QuadNumber x2, x3;
    Rational d{1};
    ScenarioSeeds seeds;
    uint64_t rng_seed = 1;
};

/// Norm of u + v sqrt(n) computed in K.
[[nodiscard]] Scalar quad_norm(const Field& k, const QuadNumber& q, const Rational& n);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> reasons;  // NonSquareSlot, NotUnit, CorestrictionNontrivial
    Rational n2, n3;                   // N_L(x2), N_L(x3)
    PlaceSet cor_ramification;
    [[nodiscard]] std::string summary() const;
};

[[nodiscard]] ValidationReport validate_scenario(const LiftScenario& sc);

/// a2 y = N(mu2) in K(sqrt n2), y = N(mu23) in K(sqrt n2 n3), a3 y = N(mu3) in K(sqrt n3).
struct Witnesses {
    Rational y;
    QuadNumber mu2, mu3, mu23;
};

/// Throws WitnessSearchFailed (search) or Precondition (validation failure).
[[nodiscard]] Witnesses derive_witnesses(const LiftScenario& sc);
/// Exact relation checks for a witness set; empty when all hold, else the failing identity.
[[nodiscard]] std::vector<std::string> witness_failures(const LiftScenario& sc, const Witnesses& w);

struct CheckResult {
    std::string check;
    bool pass = false;
    std::string detail;
};

/// Lifted data over T and S = T(sqrt a1'). Elements of T are T-coordinate
/// vectors; x2', x3' are S-vectors; mu' pairs are T-vectors (u', v') for
/// u' + v' sqrt(n'), with n' the lifted norms.
struct PrimedData {
    Vec a1, d, y, a2, a3;
    Vec x2, x3;
    Vec n2, n3, n23;
    std::pair<Vec, Vec> mu2, mu3, mu23;
};

struct LiftCertificate {
    LiftScenario scenario;
    Witnesses witnesses;
    TowerPtr t, s;
    PrimedData primed;
    AlgebraPtr b;        // B' over S
    AlgebraMap alpha;    // on restrict_scalars(B')
    Vec c;               // in restrict_scalars(B')
    AlgebraPtr a1;       // A' over T
    // A'' = A' (x) (a1', d')_T is kept as this descriptor and rebuilt on demand.
    Vec e;               // idempotent of A''
    std::vector<Vec> d_basis;  // basis of D' inside A''
    AlgebraPtr dprime;   // D' = e A'' e
    std::vector<CheckResult> report;

    [[nodiscard]] bool all_pass() const;
};

/// Every primed element from the scenario and witnesses. Throws NotUnit.
[[nodiscard]] PrimedData lift_data(const LiftScenario& sc, const Witnesses& w, const TowerPtr& t);
/// S = T(sqrt a1').
[[nodiscard]] TowerPtr lift_extension(const TowerPtr& t, const PrimedData& p);
[[nodiscard]] StructAlgebra build_b(const TowerPtr& s, const PrimedData& p);
/// The quaternion factor (a1', d')_T of A''.
[[nodiscard]] StructAlgebra build_twist_factor(const TowerPtr& t, const PrimedData& p);
/// Explicit idempotent of B' (x) sigma(B')^op with fEf of rank one, built from the lifted witnesses.
[[nodiscard]] Vec enveloping_idempotent(const StructAlgebra& b, const StructAlgebra& env, const PrimedData& p);
/// e = (1 + (t (x) i) / a1') / 2 in A'' = A' (x) q.
[[nodiscard]] Vec twist_idempotent(const StructAlgebra& a1, const StructAlgebra& q, const StructAlgebra& app,
                                   const PrimedData& p);

/// Pipeline without the verification report.
[[nodiscard]] LiftCertificate build_lift(const LiftScenario& sc, const Witnesses& w);
/// Full pipeline; the report is filled by verify_certificate.
[[nodiscard]] LiftCertificate construct_lift(const LiftScenario& sc, const Witnesses& w);
/// A'' rebuilt from A' and the lifted data.
[[nodiscard]] StructAlgebra build_a2(const LiftCertificate& cert);
/// Independent re-check of a certificate.
[[nodiscard]] std::vector<CheckResult> verify_certificate(const LiftCertificate& cert);

/// n = 2^r m with m odd: returns (2^r, cls).
[[nodiscard]] std::pair<uint64_t, SymbolClass> lemma3_reduce(uint64_t n, const SymbolClass& cls);

/// Admissible scenario over Q: nonsquare a1 of height <= 20, x2, x3 of height
/// <= 10, random a2, and a3 solved from the symbol conditions.
[[nodiscard]] LiftScenario random_admissible_scenario(Rng& rng, int trunc);

}  // namespace azulift
