#include "seplab/inner.hpp"

#include <cmath>

namespace seplab::inner {

namespace {

using Vec2 = Eigen::Vector2cd;

constexpr double kPi = 3.14159265358979323846;
const cdouble kOmega{-0.5, 0.8660254037844386};   // e^{+2 pi i/3}
const cdouble kOmegaBar{-0.5, -0.8660254037844386};
const double kSixCbrtInv = 0.5503212081491045;    // 6^{-1/3}
const double kPrefactor = std::pow(48.0, 1.0 / 6.0) * std::sqrt(kPi);

// Largest half-exponent we evaluate unscaled; keeps e^{+/-x} in normal range.
constexpr double kMaxExponent = 650.0;

struct AiryTriple {
    Vec2 l0, lp, lm;
};

AiryTriple airy_vectors(const cdouble& zeta, double y) {
    const cdouble xi = kSixCbrtInv * (y + 1.5 * zeta * zeta);
    const AiryPair a0 = airy_eval(xi);
    const AiryPair ap = airy_eval(kOmega * xi);
    const AiryPair am = airy_eval(kOmegaBar * xi);
    AiryTriple t;
    t.l0 << a0.Ai, kSixCbrtInv * a0.dAi + 0.5 * zeta * a0.Ai;
    t.lp << ap.Ai, kSixCbrtInv * kOmega * ap.dAi + 0.5 * zeta * ap.Ai;
    t.lm << am.Ai, kSixCbrtInv * kOmegaBar * am.dAi + 0.5 * zeta * am.Ai;
    return t;
}

// Column assembly per sector, without the e^{Theta sigma3} factor.
CMatrix2 l0_columns(const cdouble& zeta, double y, int sector) {
    const AiryTriple t = airy_vectors(zeta, y);
    const cdouble i(0, 1);
    const cdouble e6 = std::polar(1.0, kPi / 6.0);
    Vec2 c1, c2;
    switch (sector) {
        case 0: c1 = i * t.l0;            c2 = kOmegaBar * t.lm; break;
        case 1: c1 = e6 * t.lp;           c2 = kOmegaBar * t.lm; break;
        case 2: c1 = e6 * t.lp;           c2 = -t.l0; break;
        case 3: c1 = std::conj(e6) * t.lm; c2 = -t.l0; break;
        case 4: c1 = std::conj(e6) * t.lm; c2 = kOmega * t.lp; break;
        case 5: c1 = -i * t.l0;           c2 = kOmega * t.lp; break;
        default: throw std::invalid_argument("sector index out of range");
    }
    CMatrix2 L;
    L.col(0) = kPrefactor * c1;
    L.col(1) = kPrefactor * c2;
    return L;
}

cdouble theta_exponent(const cdouble& zeta, double y) {
    const cdouble th = 0.5 * (zeta * zeta * zeta + y * zeta);
    if (std::abs(th.real()) > kMaxExponent)
        throw std::domain_error("inner evaluation point too large for unscaled arithmetic");
    return th;
}

CMatrix2 apply_theta(CMatrix2 L, const cdouble& th) {
    L.col(0) *= std::exp(th);
    L.col(1) *= std::exp(-th);
    return L;
}

CMatrix2 ladder_factor(const InnerSolution& sol, size_t i, const cdouble& zeta) {
    return sol.ladder[i].first.cast<cdouble>() * zeta + sol.ladder[i].second.cast<cdouble>();
}

CMatrix2 apply_ladder(const InnerSolution& sol, CMatrix2 base, const cdouble& zeta) {
    for (size_t i = 0; i < sol.ladder.size(); ++i) base = ladder_factor(sol, i, zeta) * base;
    return base;
}

// diag((-zeta)^{p/2}, (-zeta)^{-p/2}) with the principal branch.
CMatrix2 neg_zeta_power_sigma3(const cdouble& zeta, int p) {
    const cdouble w = std::pow(-zeta, 0.5 * p);
    CMatrix2 d = CMatrix2::Zero();
    d(0, 0) = w;
    d(1, 1) = 1.0 / w;
    return d;
}

}  // namespace

int sector_of(const cdouble& zeta) {
    const double a = std::arg(zeta);  // (-pi, pi]
    int k = static_cast<int>(std::floor(a / (kPi / 3.0)));
    k %= 6;
    if (k < 0) k += 6;
    return k;
}

CMatrix2 z0_eval_sector(const cdouble& zeta, double y, int sector) {
    return apply_theta(l0_columns(zeta, y, sector), theta_exponent(zeta, y));
}

CMatrix2 z0_eval(const cdouble& zeta, double y) { return z0_eval_sector(zeta, y, sector_of(zeta)); }

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> schlesinger_step(const Hierarchy& h, int m, double y,
                                                             Direction dir) {
    const HierarchyEntry& e = h.entry(m);
    const Rational yr = Rational::from_double(y);
    Eigen::Matrix2d S1 = Eigen::Matrix2d::Zero(), S0 = Eigen::Matrix2d::Zero();
    if (dir == Direction::up) {
        const Rational piv = e.U.eval(yr);
        if (piv.is_zero()) {
            RootBox where{yr, yr, 1};
            for (const auto& b : e.zerosU)
                if (b.contains(yr)) where = b;
            throw LadderBlockedError("Schlesinger up-step blocked: U_m(y) = 0 at m=" + std::to_string(m), m,
                                     where);
        }
        S1(0, 0) = -1.0;
        S0(0, 0) = (e.W.eval(yr) / (Rational(3) * piv)).to_double();
        S0(0, 1) = piv.to_double();
        S0(1, 0) = (Rational(-1) / piv).to_double();
    } else {
        const Rational piv = e.V.eval(yr);
        if (piv.is_zero()) {
            RootBox where{yr, yr, 1};
            for (const auto& b : e.zerosV)
                if (b.contains(yr)) where = b;
            throw LadderBlockedError("Schlesinger down-step blocked: V_m(y) = 0 at m=" + std::to_string(m),
                                     m, where);
        }
        S1(1, 1) = -1.0;
        S0(0, 1) = (Rational(-1) / piv).to_double();
        S0(1, 0) = piv.to_double();
        S0(1, 1) = (e.Z.eval(yr) / (Rational(3) * piv)).to_double();
    }
    return {S1, S0};
}

InnerSolution make_inner_solution(const Hierarchy& h, int m, double y) {
    InnerSolution sol;
    sol.m = m;
    sol.y = y;
    const int dir = m >= 0 ? 1 : -1;
    for (int k = 0; k != m; k += dir)
        sol.ladder.push_back(schlesinger_step(h, k, y, dir > 0 ? Direction::up : Direction::down));
    return sol;
}

CMatrix2 zm_eval(const InnerSolution& sol, const cdouble& zeta) {
    return apply_ladder(sol, z0_eval(zeta, sol.y), zeta);
}

CMatrix2 zm_eval_sector(const InnerSolution& sol, const cdouble& zeta, int sector) {
    return apply_ladder(sol, z0_eval_sector(zeta, sol.y, sector), zeta);
}

CMatrix2 lm_eval_sector(const InnerSolution& sol, const cdouble& zeta, int sector) {
    return apply_ladder(sol, l0_columns(zeta, sol.y, sector), zeta);
}

ExpansionData extract_coeffs(const InnerSolution& sol, double radius, int samples) {
    if (radius < 8.0 || radius > 10.5)
        throw std::invalid_argument("extract_coeffs: radius must lie in [8, 10.5]");
    if (samples < 24) throw std::invalid_argument("extract_coeffs: need at least 24 samples");

    constexpr int kBasis = 7;  // fit 1/zeta .. 1/zeta^7, keep A, B, C
    Eigen::MatrixXd design(2 * samples, kBasis);
    std::array<Eigen::VectorXd, 4> rhs;
    for (auto& r : rhs) r.resize(2 * samples);

    for (int j = 0; j < samples; ++j) {
        // half-offset angles never land on a ray
        const double ang = -kPi + (j + 0.5) * 2.0 * kPi / samples;
        const cdouble zeta = std::polar(radius, ang);
        const CMatrix2 M =
            zm_eval(sol, zeta) * neg_zeta_power_sigma3(zeta, 1 - 2 * sol.m) - CMatrix2::Identity();
        cdouble xp(1.0, 0.0);
        for (int p = 0; p < kBasis; ++p) {
            xp /= zeta;
            design(j, p) = xp.real();
            design(samples + j, p) = xp.imag();
        }
        for (int idx = 0; idx < 4; ++idx) {
            const cdouble v = M(idx / 2, idx % 2);
            rhs[idx](j) = v.real();
            rhs[idx](samples + j) = v.imag();
        }
    }

    const auto qr = design.colPivHouseholderQr();
    ExpansionData out;
    double resid = 0;
    for (int idx = 0; idx < 4; ++idx) {
        const Eigen::VectorXd coef = qr.solve(rhs[idx]);
        const double r = (design * coef - rhs[idx]).cwiseAbs().maxCoeff();
        resid = std::max(resid, r);
        out.A(idx / 2, idx % 2) = coef(0);
        out.B(idx / 2, idx % 2) = coef(1);
        out.C(idx / 2, idx % 2) = coef(2);
    }
    out.fitResidual = resid;
    if (!(resid <= 1e-4))
        throw ExtractionError("expansion extraction failed: residual " + std::to_string(resid));
    return out;
}

CMatrix2 ray_jump_matrix(const InnerSolution& sol, int ray_index, double radius) {
    if (ray_index < 0 || ray_index > 5) throw std::invalid_argument("ray index must be 0..5");
    if (!(radius > 0)) throw std::invalid_argument("ray radius must be positive");
    const cdouble zeta = std::polar(radius, ray_index * kPi / 3.0);
    const CMatrix2 Lp = lm_eval_sector(sol, zeta, ray_index);            // counterclockwise side
    const CMatrix2 Lm = lm_eval_sector(sol, zeta, (ray_index + 5) % 6);  // clockwise side
    return Lm.inverse() * Lp;
}

double ray_jump_check(const InnerSolution& sol, int ray_index, const std::vector<double>& radii) {
    std::vector<CMatrix2> js;
    js.reserve(radii.size());
    for (double r : radii) js.push_back(ray_jump_matrix(sol, ray_index, r));
    double dev = 0;
    for (size_t i = 0; i < js.size(); ++i)
        for (size_t j = i + 1; j < js.size(); ++j)
            dev = std::max(dev, (js[i] - js[j]).cwiseAbs().maxCoeff());
    return dev;
}

LaxResiduals lax_residual(double y, const cdouble& zeta, double h) {
    if (h < 1e-6 || h > 1e-3) throw std::invalid_argument("lax_residual: h must lie in [1e-6, 1e-3]");
    InnerSolution base{0, y, {}};
    const int s = sector_of(zeta);
    auto L = [&](double yy, const cdouble& zz) {
        InnerSolution tmp{0, yy, {}};
        return lm_eval_sector(tmp, zz, s);
    };
    CMatrix2 U0;
    U0 << -0.5 * zeta, 1.0, y / 6.0, 0.5 * zeta;
    CMatrix2 V0;
    V0 << -1.5 * zeta * zeta, 3.0 * zeta, 0.5 * (y * zeta + 1.0), 1.5 * zeta * zeta;
    const CMatrix2 L0 = lm_eval_sector(base, zeta, s);
    const CMatrix2 dy = (L(y + h, zeta) - L(y - h, zeta)) / (2 * h) - U0 * L0;
    const CMatrix2 dz = (L(y, zeta + h) - L(y, zeta - h)) / (2 * h) - V0 * L0;
    // residuals relative to the solution scale
    const double scale = std::max(1.0, L0.cwiseAbs().maxCoeff());
    return {dy.cwiseAbs().maxCoeff() / scale, dz.cwiseAbs().maxCoeff() / scale};
}

}  // namespace seplab::inner
