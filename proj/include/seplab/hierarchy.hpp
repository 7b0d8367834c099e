#pragma once

#include "seplab/ratfun.hpp"
#include "seplab/roots.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace seplab {

class HierarchyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One index of the rational hierarchy together with its cached real
/// zero/pole isolation data.
struct HierarchyEntry {
    int m = 0;
    RatFun U, V, W, Z, H;
    std::vector<RootBox> zerosU, polesU, zerosV;
};

struct BEntries {
    RatFun B12, B21;
};

struct ConfinementCert {
    int signVnext;  // sign of V_{m+1}'(y0)
    int signUprev;  // sign of U_{m-1}'(y0)
};

/// Generator and cache for the rational solutions (U_m, V_m, W_m, Z_m) of the
/// Painleve-II system, grown from (U_0, V_0) = (1, -y/6) by exact Backlund
/// steps.  Reads are concurrent; a missing entry is generated under a writer
/// lock.
class Hierarchy {
  public:
    explicit Hierarchy(int bound = 8, Rational isolation_width = Rational(1, 1000000000000L));

    int bound() const { return bound_; }

    /// Entry for index m; |m| <= bound.
    const HierarchyEntry& entry(int m) const;

    RatFun hamiltonian(int m) const { return entry(m).H; }

    /// B12 = 2 H U - U', B21 = V' - 2 H V.
    BEntries b_entries(int m) const;

    /// V U' - U V' must reduce to the constant 1/6 - m/3.
    Rational lambda_check(int m) const;

    /// Residuals of the coupled second-order system and of the two
    /// inhomogeneous equations for the logarithmic derivatives; all four are
    /// identically zero for a valid entry.
    struct Residuals {
        RatFun coupledU, coupledV, logU, logV;
    };
    Residuals pii_residuals(int m) const;

    /// Residue of U_m at the pole isolated by box.  Exact, hence only
    /// available when the pole sits at a rational point; the all-pole pairing
    /// certificate below covers irrational locations.
    Rational pole_residue(int m, const RootBox& box) const;

    /// Exact certificate that at every pole (real or complex) the residues of
    /// U_m and V_m multiply to -1: den | (numU*numV + den'^2) with the shared
    /// monic squarefree denominator den.
    bool residue_pairing_holds(int m) const;

    /// At a pole y0 of U_m, verify V_{m+1} and U_{m-1} have simple zeros and
    /// return the signs of their derivatives there.
    ConfinementCert confinement_check(int m, const RootBox& box) const;

    /// One forward / backward Backlund step on a raw (U, V) pair.
    static std::pair<RatFun, RatFun> backlund_up(const RatFun& U, const RatFun& V);
    static std::pair<RatFun, RatFun> backlund_down(const RatFun& U, const RatFun& V);

    /// Insert a precomputed entry (on-disk memo support); trusted as-is.
    void seed(HierarchyEntry e);

  private:
    HierarchyEntry make_entry(int m, RatFun U, RatFun V) const;
    int bound_;
    Rational width_;
    mutable std::shared_mutex mu_;
    mutable std::map<int, std::shared_ptr<const HierarchyEntry>> cache_;
};

/// Rational with the smallest denominator inside [lo, hi] (Stern-Brocot walk).
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

}  // namespace seplab
