#include "seplab/models.hpp"

#include <cmath>
#include <stdexcept>

namespace seplab {

namespace {

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

double parity(int m) { return m % 2 == 0 ? 1.0 : -1.0; }

double kink_phase(double t, double eps, double nu, int m, double absU) {
    return t / eps - 2.0 * m * std::log(4.0 * std::cbrt(nu) / std::cbrt(eps)) + std::log(absU);
}

}  // namespace

ModelOutput kink_model(const Hierarchy& h, int m, double z, double t, double eps, double nu) {
    const HierarchyEntry& e = h.entry(m);
    const double u = e.U.eval(z);  // IEEE semantics: +-inf at poles
    ModelOutput out;
    const double tk = kink_phase(t, eps, nu, m, std::abs(u));
    // sech(+-inf) = 0 and tanh(+-inf) = +-1 give the saturated limits
    out.cosHalf = parity(m) * sgn(u) / std::cosh(tk);
    out.sinHalf = -parity(m) * std::tanh(tk);
    const double e13 = std::cbrt(eps);
    out.excluded_i = std::exp(-t / eps) * std::pow(eps, -2.0 * m / 3.0) <= e13 &&
                     root_set_distance(z, e.zerosU) <= e13;
    out.excluded_ii = std::exp(t / eps) * std::pow(eps, 2.0 * m / 3.0) <= e13 &&
                      root_set_distance(z, e.polesU) <= e13;
    out.saturated = !std::isfinite(u) || u == 0.0;
    return out;
}

std::vector<std::pair<double, double>> kink_center_curve(const Hierarchy& h, int m, double z_lo,
                                                         double z_hi, double eps, double nu, int n) {
    if (n < 2) throw std::invalid_argument("kink_center_curve: need at least two samples");
    const HierarchyEntry& e = h.entry(m);
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double z = z_lo + (z_hi - z_lo) * i / (n - 1);
        const double u = e.U.eval(z);
        const double t = eps * (2.0 * m * std::log(4.0 * std::cbrt(nu) / std::cbrt(eps)) -
                                std::log(std::abs(u)));
        if (std::isfinite(t)) out.emplace_back(z, t);
    }
    return out;
}

ModelOutput grazing_model(const Hierarchy& h, int m, double z0, double z, double t, double eps,
                          double nu) {
    const HierarchyEntry& prev = h.entry(m - 1);
    bool ok = false;
    for (const auto& b : prev.zerosU)
        if (b.multiplicity == 1 && b.lo.to_double() - 1e-9 <= z0 && z0 <= b.hi.to_double() + 1e-9)
            ok = true;
    if (!ok)
        throw std::invalid_argument("grazing_model: z0 is not a simple real zero of U_{m-1}");
    const double up = prev.U.derivative().eval(z0);
    const double Xg = 2.0 * std::cbrt(nu / eps) * (z - z0);
    const double Tg = t / eps - (2.0 * m - 1.0) * std::log(4.0 * std::cbrt(nu) / std::cbrt(eps)) +
                      std::log(std::abs(up));
    const double S = Xg / std::cosh(Tg);
    ModelOutput out;
    out.cosHalf = parity(m - 1) * sgn(up) * 2.0 * S / (1.0 + S * S);
    out.sinHalf = parity(m - 1) * (1.0 - S * S) / (1.0 + S * S);
    return out;
}

std::pair<double, double> exact_kink(double T, int sigma) {
    const double sech = 1.0 / std::cosh(T);
    return {2.0 * sech * sech - 1.0, -2.0 * sigma * sech * std::tanh(T)};
}

std::pair<double, double> exact_grazing(double X, double T, int kappa_sign) {
    const double s = X / std::cosh(T);
    const double d = 1.0 + s * s;
    return {8.0 * s * s / (d * d) - 1.0, 4.0 * kappa_sign * s * (1.0 - s * s) / (d * d)};
}

MultiscaleEvaluator::MultiscaleEvaluator(const Hierarchy& h, int m, int sign) : m_(m), sign_(sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("MultiscaleEvaluator: sign must be +-1");
    const HierarchyEntry& e = h.entry(m);
    const auto b = h.b_entries(m);
    if (sign > 0) {
        F_ = e.U;
        B_ = b.B12;  // 2 H U - U'
    } else {
        F_ = e.V;
        B_ = Rational(-1) * b.B21;  // 2 H V - V'
    }
}

double MultiscaleEvaluator::r_value(double z, double q, double eps, double nu) const {
    const double f = F_.eval(z);
    const double b = B_.eval(z);
    if (!std::isfinite(f) || !std::isfinite(b)) return 0.0;  // pole limit
    const double e23 = std::pow(eps, 2.0 / 3.0);
    if (sign_ > 0) {
        const double num = -std::pow(2.0, 4.0 * (1 - m_)) * std::pow(nu, -2.0 * m_ / 3.0) *
                           std::exp(q) * f;
        const double den = std::pow(2.0, -8.0 * m_) * std::pow(nu, -2.0 * (1 + 2 * m_) / 3.0) * e23 *
                               std::exp(2.0 * q) * b * b +
                           16.0;
        return std::isfinite(num) && std::isfinite(den) ? num / den : 0.0;
    }
    const double num =
        -std::pow(2.0, 4.0 * m_) * std::pow(nu, 2.0 * (m_ - 1) / 3.0) * std::exp(-q) * f;
    const double den = std::pow(2.0, 8.0 * (m_ - 1)) * std::pow(nu, -2.0 + 4.0 * m_ / 3.0) * e23 *
                           std::exp(-2.0 * q) * b * b +
                       16.0;
    return std::isfinite(num) && std::isfinite(den) ? num / den : 0.0;
}

ModelOutput MultiscaleEvaluator::eval(double z, double q, double eps, double nu) const {
    const double f = F_.eval(z);
    const double R = r_value(z, q, eps, nu);
    ModelOutput out;
    const double sp = sign_ > 0 ? 1.0 : -1.0;
    out.cosHalf = sp * -parity(m_) * 2.0 * R / (R * R + 1.0);
    out.sinHalf = -parity(m_) * (R * R - 1.0) / (R * R + 1.0);
    out.saturated = !std::isfinite(f);
    return out;
}

ModelOutput multiscale_model(const Hierarchy& h, int m, int sign, double z, double q, double eps,
                             double nu) {
    return MultiscaleEvaluator(h, m, sign).eval(z, q, eps, nu);
}

double g_model(double z, double q0) {
    (void)z;
    (void)q0;
    const double S = 1.0;  // w* = -1 at criticality
    return -(S + 1.0 / S);
}

MultiscaleField::MultiscaleField(std::shared_ptr<const Hierarchy> h, RegionParams params,
                                 CritConstants cc)
    : h_(h), rc_(h, params), cc_(cc) {
    const int B = params.bound;
    for (int m = -B; m <= B + 1; ++m) {  // the top strip uses the (B+1, -) region
        plus_.emplace_back(*h_, m, +1);
        minus_.emplace_back(*h_, m, -1);
    }
}

const MultiscaleEvaluator& MultiscaleField::evaluator(const RegionLabel& lab) const {
    const size_t i = static_cast<size_t>(lab.m + rc_.params().bound);
    return lab.sign > 0 ? plus_.at(i) : minus_.at(i);
}

MultiscaleField::Value MultiscaleField::eval_scaled(double z, double s) const {
    Value v;
    v.labels = rc_.classify(z, s);
    if (v.labels.empty()) throw RegionError("multiscale field: point outside every region");
    const double eps = rc_.params().eps;
    std::vector<ModelOutput> outs;
    for (const auto& lab : v.labels) {
        const double q = rc_.p_of(lab.sign > 0 ? lab.m : lab.m - 1, s);
        outs.push_back(evaluator(lab).eval(z, q, eps, cc_.nu));
    }
    v.primary = outs.front();
    for (size_t i = 1; i < outs.size(); ++i) {
        const double pa = rc_.p_of(v.labels[0].sign > 0 ? v.labels[0].m : v.labels[0].m - 1, s);
        const double pb = rc_.p_of(v.labels[i].sign > 0 ? v.labels[i].m : v.labels[i].m - 1, s);
        double env = 0;
        try {
            env = rc_.error_envelope(v.labels[0], z, pa) + rc_.error_envelope(v.labels[i], z, pb);
        } catch (const RegionError&) {
            env = 2.0 * std::cbrt(eps);
        }
        const double d = std::max(std::abs(outs[i].cosHalf - v.primary.cosHalf),
                                  std::abs(outs[i].sinHalf - v.primary.sinHalf));
        if (d > 5.0 * env) v.overlap_disagrees = true;
    }
    return v;
}

MultiscaleField::Value MultiscaleField::eval(double x, double t) const {
    const double eps = rc_.params().eps;
    const Coords c = coords(cc_, x, t, eps);
    return eval_scaled(c.z, c.s);
}

double sg_residual(const SampledField& field) {
    const auto rows = field.cosU.rows(), cols = field.cosU.cols();
    if (rows < 3 || cols < 3) throw std::invalid_argument("sg_residual: grid too small");
    if (field.sinU.rows() != rows || field.sinU.cols() != cols)
        throw std::invalid_argument("sg_residual: mismatched component grids");
    const double h = field.h;
    if (!(h > 0)) throw std::invalid_argument("sg_residual: spacing must be positive");

    // continuous angle, unwrapped row-major from the origin
    Eigen::ArrayXXd u(rows, cols);
    auto unwrap_step = [](double prev, double raw) {
        double d = raw - std::fmod(prev, 2.0 * M_PI);
        d = std::remainder(d, 2.0 * M_PI);
        if (std::abs(d) > M_PI / 2.0)
            throw std::runtime_error("sg_residual: unwrap ambiguity; sample with smaller h");
        return prev + d;
    };
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double raw = std::atan2(field.sinU(i, j), field.cosU(i, j));
            if (i == 0 && j == 0)
                u(i, j) = raw;
            else if (j == 0)
                u(i, j) = unwrap_step(u(i - 1, 0), raw);
            else
                u(i, j) = unwrap_step(u(i, j - 1), raw);
        }
    }

    double worst = 0.0;
    for (Eigen::Index i = 1; i + 1 < rows; ++i)
        for (Eigen::Index j = 1; j + 1 < cols; ++j) {
            const double utt = (u(i, j + 1) - 2.0 * u(i, j) + u(i, j - 1)) / (h * h);
            const double uxx = (u(i + 1, j) - 2.0 * u(i, j) + u(i - 1, j)) / (h * h);
            worst = std::max(worst, std::abs(utt - uxx + std::sin(u(i, j))));
        }
    return worst;
}

}  // namespace seplab
