#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace seplab {

class ProfileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Klaus-Shaw impulse profile: G <= 0, even, single minimum at 0, with
/// G(0) < -2 so the impulse data crosses the pendulum separatrix.
class Profile {
  public:
    virtual ~Profile() = default;

    virtual double G(double x) const = 0;
    virtual double Gprime(double x) const = 0;
    /// Inverse on the right branch: x >= 0 with G(x) = -v, for 0 < v < -G(0).
    virtual double Ginv(double v) const = 0;
    virtual double l1norm() const = 0;
    virtual std::string describe() const = 0;

    double G0() const { return G(0.0); }
    /// sqrt(m) sqrt(G0^2 - m) / (2 G'(Ginv(sqrt(m)))) on (0, G0^2).
    double scriptG(double m) const;
};

/// G(x) = -A sech(x), A > 2.
class SechProfile final : public Profile {
  public:
    explicit SechProfile(double amplitude);
    double G(double x) const override;
    double Gprime(double x) const override;
    double Ginv(double v) const override;
    double l1norm() const override;
    std::string describe() const override;
    double amplitude() const { return amp_; }

  private:
    double amp_;
};

std::shared_ptr<const Profile> profile_sech(double amplitude);

/// Key-value text config, e.g. "type: sech\namplitude: 3.0".
std::shared_ptr<const Profile> profile_from_config(const std::string& text);
std::shared_ptr<const Profile> profile_from_config_file(const std::string& path);

struct CritConstants {
    double xCrit;
    double nu;
    double wStar;  // -1 at criticality
    double S;      // +1 at criticality
};
CritConstants crit_constants(const Profile& p);

/// The admissible semiclassical parameters eps_N = ||G||_1 / (4 pi N).
double epsilon_N(const Profile& p, int N);

/// Psi(v) = (1/2) int_0^{Ginv(v)} sqrt(G^2 - v^2) ds, 0 < v < -G(0).
double psi_eval(const Profile& p, double v);

enum class PhiRoute { direct, scriptG };
/// phi(v) = d/dv Psi: either by differencing Psi or through the scriptG
/// integral; the two agree to 1e-6 on (2, -G(0)).
double phi_eval(const Profile& p, double v, PhiRoute route);

struct IdentityReport {
    double xCrit, nu;
    double I2;                 // equals -xCrit/2
    double nuAlt;              // scriptG(4) / (12 sqrt(G0^2 - 4)), equals nu
    double maxPhiRouteDiff;    // over sampled v
    double i2Defect, nuDefect;
};
/// Computes the criticality integrals and throws ProfileError when the
/// closed-form identities are violated beyond tolerance.
IdentityReport identity_checks(const Profile& p);

/// The N quantization points v_k with Psi(v_k) = pi eps_N (k + 1/2),
/// k = 0..N-1.  Psi decreases, so the v_k strictly decrease with k.
std::vector<double> bohr_sommerfeld(const Profile& p, int N);

struct Coords {
    double dx;  // x - xCrit
    double z;   // dx / (2 nu^{1/3} eps^{2/3})
    double r;   // leading order: dx / (2 nu^{1/3})
    double s;   // leading order: t
    double y;   // r / eps^{2/3}
    int m;      // strip index: |q_m| <= (1/3) log(1/eps), ties to lower m
    double pm;  // s/eps - (2m/3) log(1/eps)
    double qm;  // t/eps - (2m/3) log(1/eps)
};
Coords coords(const Profile& p, double x, double t, double eps);
Coords coords(const CritConstants& cc, double x, double t, double eps);

}  // namespace seplab
