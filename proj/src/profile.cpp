#include "seplab/profile.hpp"

#include "seplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace seplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double round_half_down(double x) { return std::ceil(x - 0.5); }

}  // namespace

double Profile::scriptG(double m) const {
    const double g0sq = G0() * G0();
    if (!(m > 0.0) || !(m < g0sq)) throw ProfileError("scriptG: argument outside (0, G(0)^2)");
    const double rm = std::sqrt(m);
    return rm * std::sqrt(g0sq - m) / (2.0 * Gprime(Ginv(rm)));
}

SechProfile::SechProfile(double amplitude) : amp_(amplitude) {
    if (!(amplitude > 2.0))
        throw ProfileError("sech profile needs amplitude > 2 so that G(0) < -2");
}

double SechProfile::G(double x) const { return -amp_ / std::cosh(std::abs(x)); }

double SechProfile::Gprime(double x) const {
    const double s = 1.0 / std::cosh(x);
    return amp_ * s * std::tanh(x);
}

double SechProfile::Ginv(double v) const {
    if (!(v > 0.0) || !(v < amp_)) throw ProfileError("Ginv: argument outside (0, -G(0))");
    const double u = v / amp_;
    // arcsech(u) = log((1 + sqrt(1-u^2)) / u)
    return std::log((1.0 + std::sqrt((1.0 - u) * (1.0 + u))) / u);
}

double SechProfile::l1norm() const { return amp_ * kPi; }

std::string SechProfile::describe() const {
    std::ostringstream os;
    os << "sech amplitude=" << amp_;
    return os.str();
}

std::shared_ptr<const Profile> profile_sech(double amplitude) {
    return std::make_shared<SechProfile>(amplitude);
}

std::shared_ptr<const Profile> profile_from_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ProfileError("profile config: expected 'key: value' in '" + line + "'");
        kv[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
    }
    const auto type = kv.find("type");
    if (type == kv.end()) throw ProfileError("profile config: missing 'type'");
    if (type->second == "sech") {
        const auto amp = kv.find("amplitude");
        if (amp == kv.end()) throw ProfileError("profile config: sech needs 'amplitude'");
        return profile_sech(std::stod(amp->second));
    }
    throw ProfileError("profile config: unknown type '" + type->second + "'");
}

std::shared_ptr<const Profile> profile_from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProfileError("cannot open profile config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return profile_from_config(buf.str());
}

CritConstants crit_constants(const Profile& p) {
    // root solve of G(x) = -2 on x > 0; G increases from G(0) < -2 toward 0
    double lo = 0.0, hi = 1.0;
    while (p.G(hi) < -2.0) {
        hi *= 2.0;
        if (hi > 1e8) throw ProfileError("crit_constants: root bracket failed");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (p.G(mid) < -2.0 ? lo : hi) = mid;
    }
    const double xc = 0.5 * (lo + hi);
    const double gp = p.Gprime(xc);
    if (!(gp > 0)) throw ProfileError("crit_constants: G'(xCrit) must be positive");
    return {xc, 1.0 / (12.0 * gp), -1.0, 1.0};
}

double epsilon_N(const Profile& p, int N) {
    if (N < 1) throw ProfileError("epsilon_N: N must be >= 1");
    return p.l1norm() / (4.0 * kPi * N);
}

double psi_eval(const Profile& p, double v) {
    if (!(v > 0.0) || !(v < -p.G0())) throw ProfileError("psi_eval: v outside (0, -G(0))");
    const double X = p.Ginv(v);
    // s = X - tau^2 removes the square-root vanishing at the right endpoint
    auto f = [&](double tau) {
        const double s = X - tau * tau;
        const double g = p.G(s);
        const double d = g * g - v * v;
        return d <= 0.0 ? 0.0 : tau * std::sqrt(d);
    };
    return integrate(f, 0.0, std::sqrt(X), 1e-10);
}

double phi_eval(const Profile& p, double v, PhiRoute route) {
    const double A = -p.G0();
    if (!(v > 2.0) || !(v < A)) throw ProfileError("phi_eval: v outside (2, -G(0))");
    if (route == PhiRoute::direct) {
        // five-point stencil, clipped so v +/- 2h stays inside (0, A)
        const double h = std::min({1e-2, (A - v) / 3.0, v / 3.0});
        const double d1 = psi_eval(p, v + h) - psi_eval(p, v - h);
        const double d2 = psi_eval(p, v + 2 * h) - psi_eval(p, v - 2 * h);
        return (8.0 * d1 - d2) / (12.0 * h);
    }
    // m = v^2 + (G0^2 - v^2) sin^2(theta) turns the double square-root
    // integral into a smooth one over (0, pi/2)
    const double g0sq = A * A;
    auto f = [&](double theta) {
        const double st = std::sin(theta);
        // rounding can land exactly on G0^2 when v is close to the endpoint
        const double m =
            std::min(v * v + (g0sq - v * v) * st * st, std::nextafter(g0sq, 0.0));
        return p.scriptG(m) / m;
    };
    return -v * integrate(f, 0.0, kPi / 2.0, 1e-11);
}

IdentityReport identity_checks(const Profile& p) {
    IdentityReport r{};
    const CritConstants cc = crit_constants(p);
    r.xCrit = cc.xCrit;
    r.nu = cc.nu;
    // I2 = (2/pi) int_2^{-G0} phi(v) dv / sqrt(v^2 - 4); v = 2 cosh(u) makes
    // it smooth and maps the interval onto (0, xCrit)
    const double umax = std::acosh(-p.G0() / 2.0);
    r.I2 = 2.0 / kPi *
           integrate([&](double u) { return phi_eval(p, 2.0 * std::cosh(u), PhiRoute::scriptG); }, 0.0,
                     umax, 1e-9);
    const double g0sq = p.G0() * p.G0();
    r.nuAlt = p.scriptG(4.0) / (12.0 * std::sqrt(g0sq - 4.0));
    r.maxPhiRouteDiff = 0.0;
    for (double v = 2.1; v < -p.G0() - 0.05; v += 0.2) {
        const double d = std::abs(phi_eval(p, v, PhiRoute::direct) - phi_eval(p, v, PhiRoute::scriptG));
        r.maxPhiRouteDiff = std::max(r.maxPhiRouteDiff, d);
    }
    r.i2Defect = std::abs(r.I2 + 0.5 * r.xCrit);
    r.nuDefect = std::abs(r.nuAlt - r.nu);
    if (r.i2Defect > 1e-6) throw ProfileError("identity violation: I2 != -xCrit/2");
    if (r.nuDefect > 1e-9) throw ProfileError("identity violation: scriptG(4) route disagrees with nu");
    return r;
}

std::vector<double> bohr_sommerfeld(const Profile& p, int N) {
    if (N < 1) throw ProfileError("bohr_sommerfeld: N must be >= 1");
    const double eps = epsilon_N(p, N);
    const double A = -p.G0();
    std::vector<double> out;
    out.reserve(N);
    for (int k = 0; k < N; ++k) {
        const double target = kPi * eps * (k + 0.5);
        // Psi decreases from ||G||_1/4 to 0 on (0, A)
        double lo = 1e-12, hi = A - 1e-12;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * A; ++it) {
            const double mid = 0.5 * (lo + hi);
            (psi_eval(p, mid) > target ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

Coords coords(const CritConstants& cc, double x, double t, double eps) {
    if (!(eps > 0)) throw ProfileError("coords: eps must be positive");
    Coords c{};
    c.dx = x - cc.xCrit;
    const double nu13 = std::cbrt(cc.nu);
    c.z = c.dx / (2.0 * nu13 * std::pow(eps, 2.0 / 3.0));
    c.r = c.dx / (2.0 * nu13);
    c.s = t;
    c.y = c.r / std::pow(eps, 2.0 / 3.0);
    const double L = std::log(1.0 / eps);
    c.m = static_cast<int>(round_half_down(1.5 * t / (eps * L)));
    c.pm = c.s / eps - (2.0 * c.m / 3.0) * L;
    c.qm = t / eps - (2.0 * c.m / 3.0) * L;
    return c;
}

Coords coords(const Profile& p, double x, double t, double eps) {
    return coords(crit_constants(p), x, t, eps);
}

}  // namespace seplab
