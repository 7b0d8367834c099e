// seplab: separatrix-crossing wave patterns for semiclassical sine-Gordon.
// Every subcommand writes its outputs plus a manifest.json into --out.

#include "seplab/io.hpp"
#include "seplab/models.hpp"
#include "seplab/pde.hpp"
#include "seplab/profile.hpp"
#include "seplab/regions.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace seplab;
using nlohmann::json;

struct MRange {
    int lo = 0, hi = 0;
};

MRange parse_mrange(const std::string& s) {
    const auto pos = s.find("..");
    if (pos == std::string::npos) throw CLI::ValidationError("m-range", "expected the form a..b");
    MRange r;
    r.lo = std::stoi(s.substr(0, pos));
    r.hi = std::stoi(s.substr(pos + 2));
    if (r.lo > r.hi) std::swap(r.lo, r.hi);
    return r;
}

double parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return std::stod(s);
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    if (threads <= 1 || n < 4) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (long i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

int hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fd(double v) { return io::format_double(v); }

// ---- subcommand bodies ----

int cmd_hierarchy(const std::string& mrange, int bound, const std::filesystem::path& out) {
    io::Manifest man("hierarchy", out);
    man.param("m-range", mrange);
    const MRange r = parse_mrange(mrange);
    auto h = io::make_cached_hierarchy(std::max({bound, std::abs(r.lo), std::abs(r.hi)}));
    json entries = json::array();
    for (int m = r.lo; m <= r.hi; ++m) entries.push_back(io::entry_to_json(h->entry(m)));
    std::ofstream f(out / "hierarchy.json");
    f << entries.dump(2) << "\n";
    man.add_output(out / "hierarchy.json");
    man.write();
    return 0;
}

int cmd_identities(const std::string& profile_cfg, int bound, const std::filesystem::path& out) {
    io::Manifest man("identities", out);
    man.param("profile", profile_cfg);
    man.param("bound", static_cast<long>(bound));
    auto p = profile_from_config_file(profile_cfg);
    auto h = io::make_cached_hierarchy(bound);

    json report;
    bool ok = true;
    json hier = json::array();
    for (int m = -bound; m <= bound; ++m) {
        json jm;
        jm["m"] = m;
        const auto res = h->pii_residuals(m);
        const bool zero = res.coupledU.is_zero() && res.coupledV.is_zero() && res.logU.is_zero() &&
                          res.logV.is_zero();
        jm["residualsZero"] = zero;
        try {
            jm["lambda"] = h->lambda_check(m).to_string();
            jm["lambdaOk"] = true;
        } catch (const HierarchyError& e) {
            jm["lambdaOk"] = false;
            jm["error"] = e.what();
        }
        jm["residuePairing"] = h->residue_pairing_holds(m);
        ok = ok && zero && jm["lambdaOk"].get<bool>() && jm["residuePairing"].get<bool>();
        hier.push_back(jm);
    }
    report["hierarchy"] = hier;
    try {
        const IdentityReport r = identity_checks(*p);
        report["criticality"] = {{"xCrit", r.xCrit},       {"nu", r.nu},
                                 {"I2", r.I2},             {"nuAlt", r.nuAlt},
                                 {"i2Defect", r.i2Defect}, {"nuDefect", r.nuDefect},
                                 {"maxPhiRouteDiff", r.maxPhiRouteDiff}};
        report["criticalityOk"] = r.maxPhiRouteDiff <= 1e-6;
        ok = ok && report["criticalityOk"].get<bool>();
    } catch (const ProfileError& e) {
        report["criticalityOk"] = false;
        report["criticalityError"] = e.what();
        ok = false;
    }
    report["allOk"] = ok;
    std::ofstream f(out / "identities.json");
    f << report.dump(2) << "\n";
    man.add_output(out / "identities.json");
    man.write();
    return ok ? 0 : 1;
}

int cmd_inner(int m, double y, double radius, int samples, const std::filesystem::path& out) {
    io::Manifest man("inner", out);
    man.param("m", static_cast<long>(m));
    man.param("y", y);
    man.param("radius", radius);
    man.param("samples", static_cast<long>(samples));
    auto h = io::make_cached_hierarchy(std::max(3, std::abs(m)));
    const inner::InnerSolution sol = inner::make_inner_solution(*h, m, y);
    const inner::ExpansionData ex = inner::extract_coeffs(sol, radius, samples);

    json rep = io::expansion_to_json(ex);
    // radii small enough that the e^{|zeta^3 + y zeta|} conditioning of the
    // jump extraction stays below the 1e-8 scale for |m| <= 3, |y| <= 2
    const std::vector<double> radii{1.0, 1.4, 1.8};
    json jumps = json::array();
    for (int ray = 0; ray < 6; ++ray) {
        const double dev = inner::ray_jump_check(sol, ray, radii);
        const auto J = inner::ray_jump_matrix(sol, ray, radii[1]);
        jumps.push_back({{"ray", ray},
                         {"deviation", dev},
                         {"detDefect", std::abs(J.determinant() - 1.0)}});
    }
    rep["rayJumps"] = jumps;
    if (m == 0) {
        const auto lax = inner::lax_residual(y, {2.0, 1.0}, 1e-4);
        rep["lax"] = {{"ry", lax.ry}, {"rzeta", lax.rzeta}, {"h", 1e-4}};
    }
    std::ofstream f(out / "inner.json");
    f << rep.dump(2) << "\n";
    man.add_output(out / "inner.json");

    std::ofstream csv(out / "samples.csv");
    csv << "angle,re11,im11,re12,im12,re21,im21,re22,im22\n";
    for (int j = 0; j < samples; ++j) {
        const double ang = -M_PI + (j + 0.5) * 2.0 * M_PI / samples;
        const auto Z = inner::zm_eval(sol, std::polar(radius, ang));
        csv << fd(ang);
        for (int idx = 0; idx < 4; ++idx) {
            const auto v = Z(idx / 2, idx % 2);
            csv << "," << fd(v.real()) << "," << fd(v.imag());
        }
        csv << "\n";
    }
    man.add_output(out / "samples.csv");
    man.write();
    return 0;
}

int cmd_regions(double eps, double delta, double kappa, int bound, int ny, int ns,
                const std::filesystem::path& out) {
    io::Manifest man("regions", out);
    man.param("eps", eps);
    man.param("delta", delta);
    man.param("kappa", kappa);
    man.param("bound", static_cast<long>(bound));
    auto h = io::make_cached_hierarchy(bound + 1);
    RegionParams rp;
    rp.eps = eps;
    rp.delta = delta;
    rp.kappa = kappa;
    rp.bound = bound;
    RegionClassifier rc(h, rp);
    const double L = std::log(1.0 / eps);
    const double sMax = (2.0 * bound / 3.0 + 1.0 / 3.0) * eps * L;
    std::ofstream csv(out / "regions.csv");
    csv << "y,s,m,sign\n";
    for (int i = 0; i < ny; ++i) {
        const double y = -3.0 + 6.0 * i / (ny - 1);
        for (int j = 0; j < ns; ++j) {
            const double s = -sMax + 2.0 * sMax * j / (ns - 1);
            const auto labels = rc.classify(y, s);
            for (const auto& lab : labels)
                csv << fd(y) << "," << fd(s) << "," << lab.m << "," << (lab.sign > 0 ? "+" : "-")
                    << "\n";
        }
    }
    man.add_output(out / "regions.csv");
    json sidecar = {{"eps", eps},     {"delta", delta}, {"kappa", kappa},
                    {"bound", bound}, {"ny", ny},       {"ns", ns}};
    std::ofstream side(out / "regions.json");
    side << sidecar.dump(2) << "\n";
    man.add_output(out / "regions.json");
    man.write();
    return 0;
}

int cmd_kinkcurves(double eps, double nu, const std::string& mrange, double zlo, double zhi,
                   int samples, const std::filesystem::path& out) {
    io::Manifest man("kinkcurves", out);
    man.param("eps", eps);
    man.param("nu", nu);
    man.param("m-range", mrange);
    const MRange r = parse_mrange(mrange);
    auto h = io::make_cached_hierarchy(std::max(std::abs(r.lo), std::abs(r.hi)));
    std::ofstream csv(out / "kinkcurves.csv");
    csv << "m,z,t\n";
    for (int m = r.lo; m <= r.hi; ++m)
        for (const auto& [z, t] : kink_center_curve(*h, m, zlo, zhi, eps, nu, samples))
            csv << m << "," << fd(z) << "," << fd(t) << "\n";
    man.add_output(out / "kinkcurves.csv");
    json sidecar = {{"eps", eps}, {"nu", nu}, {"zRange", {zlo, zhi}}, {"samples", samples}};
    std::ofstream side(out / "kinkcurves.json");
    side << sidecar.dump(2) << "\n";
    man.add_output(out / "kinkcurves.json");
    man.write();
    return 0;
}

int cmd_model(const std::string& profile_cfg, double eps, double zHalfWidth,
              const std::string& window, int nx, int nt, int bound, int threads,
              const std::filesystem::path& out) {
    io::Manifest man("model", out);
    man.param("profile", profile_cfg);
    man.param("eps", eps);
    auto p = profile_from_config_file(profile_cfg);
    const CritConstants cc = crit_constants(*p);
    auto h = io::make_cached_hierarchy(bound + 1);
    RegionParams rp;
    rp.eps = eps;
    rp.bound = bound;
    MultiscaleField field(h, rp, cc);

    const double L = std::log(1.0 / eps);
    const double halfX = zHalfWidth * 2.0 * std::cbrt(cc.nu) * std::pow(eps, 2.0 / 3.0);
    // stay a hair inside the covered strips so boundary rounding cannot fall out
    const double tMax = (2.0 * bound / 3.0 + 1.0 / 3.0) * eps * L * (1.0 - 1e-9);
    double x0 = cc.xCrit - halfX, x1 = cc.xCrit + halfX, t0 = -tMax, t1 = tMax;
    if (!window.empty()) {  // explicit window "x0:x1:t0:t1"
        std::istringstream ws(window);
        std::string tok;
        double vals[4];
        for (double& v : vals) {
            if (!std::getline(ws, tok, ':'))
                throw std::invalid_argument("model: window must be x0:x1:t0:t1");
            v = std::stod(tok);
        }
        x0 = vals[0];
        x1 = vals[1];
        t0 = vals[2];
        t1 = vals[3];
    }
    man.param("window", std::to_string(x0) + ":" + std::to_string(x1) + ":" + std::to_string(t0) +
                            ":" + std::to_string(t1));
    struct Row {
        double x, t, c, s;
        bool flag;
    };
    std::vector<Row> rows(static_cast<size_t>(nx) * nt);
    parallel_for(static_cast<long>(rows.size()), threads, [&](long idx) {
        const int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        const double x = x0 + (x1 - x0) * i / (nx - 1);
        const double t = t0 + (t1 - t0) * j / (nt - 1);
        Row& r = rows[static_cast<size_t>(idx)];
        r.x = x;
        r.t = t;
        const auto v = field.eval(x, t);
        r.c = v.primary.cosHalf;
        r.s = v.primary.sinHalf;
        r.flag = v.overlap_disagrees;
    });
    std::ofstream csv(out / "model.csv");
    csv << "x,t,cosHalf,sinHalf,overlapFlag\n";
    for (const auto& r : rows)
        csv << fd(r.x) << "," << fd(r.t) << "," << fd(r.c) << "," << fd(r.s) << "," << (r.flag ? 1 : 0)
            << "\n";
    man.add_output(out / "model.csv");
    json sidecar = {{"eps", eps},
                    {"nu", cc.nu},
                    {"delta", rp.delta},
                    {"kappa", rp.kappa},
                    {"profile", p->describe()}};
    std::ofstream side(out / "model.json");
    side << sidecar.dump(2) << "\n";
    man.add_output(out / "model.json");
    man.write();
    return 0;
}

int cmd_pde(const std::string& profile_cfg, double eps, double tEnd, int nx, double L, double cfl,
            int outputEvery, bool csv, const std::filesystem::path& out) {
    io::Manifest man("pde", out);
    man.param("profile", profile_cfg);
    man.param("eps", eps);
    man.param("tEnd", tEnd);
    man.param("nx", static_cast<long>(nx));
    man.param("L", L);
    man.param("cfl", cfl);
    auto p = profile_from_config_file(profile_cfg);
    SolverConfig cfg;
    cfg.eps = eps;
    cfg.tEnd = tEnd;
    cfg.nx = nx;
    cfg.L = L;
    cfg.cfl = cfl;
    cfg.outputEvery = outputEvery;
    long count = 0;
    solve_pde(*p, cfg, [&](const FieldFrame& f) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06ld", count++);
        if (csv) {
            io::write_frame_csv(f, out / (std::string(name) + ".csv"));
            man.add_output(out / (std::string(name) + ".csv"));
        } else {
            io::write_frame(f, out / name);
            man.add_output(out / (std::string(name) + ".bin"));
        }
    });
    man.param("frames", count);
    man.write();
    return 0;
}

int cmd_compare(const std::string& profile_cfg, const std::string& ladder, int bound, double cfl,
                const std::filesystem::path& out) {
    io::Manifest man("compare", out);
    man.param("profile", profile_cfg);
    man.param("eps-ladder", ladder);
    auto p = profile_from_config_file(profile_cfg);
    const CritConstants cc = crit_constants(*p);
    auto h = io::make_cached_hierarchy(bound + 1);

    std::vector<double> epses;
    std::istringstream in(ladder);
    std::string tok;
    while (std::getline(in, tok, ',')) epses.push_back(parse_fraction(tok));
    if (epses.empty()) throw std::invalid_argument("compare: empty eps ladder");

    std::ofstream csv(out / "compare.csv");
    csv << "eps,supError,l2Error,samples\n";
    json rows = json::array();
    for (double eps : epses) {
        RegionParams rp;
        rp.eps = eps;
        rp.bound = bound;
        MultiscaleField field(h, rp, cc);
        SolverConfig cfg;
        cfg.eps = eps;
        cfg.cfl = cfl;
        const double L = std::log(1.0 / eps);
        cfg.tEnd = eps * L / 3.0;
        cfg.nx = static_cast<int>(std::ceil(2.0 * cfg.L / (eps / 10.0)));
        cfg.outputEvery = std::max(1L, static_cast<long>(cfg.tEnd / (cfl * eps / 10.0) / 24));
        std::vector<FieldFrame> frames;
        solve_pde(*p, cfg, [&](const FieldFrame& f) { frames.push_back(f); });
        const double halfX = 2.0 * 2.0 * std::cbrt(cc.nu) * std::pow(eps, 2.0 / 3.0);
        CompareWindow w{cc.xCrit - halfX, cc.xCrit + halfX, 0.0, cfg.tEnd};
        const auto res = model_compare(
            frames,
            [&](double x, double t) {
                const auto v = field.eval(x, t);
                return std::pair<double, double>(v.primary.cosHalf, v.primary.sinHalf);
            },
            w);
        csv << fd(eps) << "," << fd(res.supError) << "," << fd(res.l2Error) << "," << res.samples
            << "\n";
        rows.push_back({{"eps", eps},
                        {"supError", res.supError},
                        {"l2Error", res.l2Error},
                        {"samples", res.samples}});
    }
    man.add_output(out / "compare.csv");
    std::ofstream side(out / "compare.json");
    side << rows.dump(2) << "\n";
    man.add_output(out / "compare.json");
    man.write();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seplab: universal wave patterns at semiclassical sine-Gordon separatrix crossings"};
    app.require_subcommand(1);

    std::string outdir = "seplab_out";
    app.add_option("-o,--out", outdir, "output directory")->capture_default_str();
    int threads = hardware_threads();
    app.add_option("--threads", threads, "worker threads for grid fills");

    // hierarchy
    auto* sc_h = app.add_subcommand("hierarchy", "export exact hierarchy entries and root boxes");
    std::string mrange = "-6..7";
    int bound = 8;
    sc_h->add_option("--m-range", mrange, "index range a..b")->capture_default_str();
    sc_h->add_option("--bound", bound, "generation bound")->capture_default_str();

    // identities
    auto* sc_id = app.add_subcommand("identities", "exact hierarchy and criticality identity suites");
    std::string profile_cfg;
    sc_id->add_option("--profile", profile_cfg, "profile config file")->required();
    int id_bound = 8;
    sc_id->add_option("--bound", id_bound, "hierarchy bound")->capture_default_str();

    // inner
    auto* sc_in = app.add_subcommand("inner", "inner model solution: expansion data and jump reports");
    int in_m = 0;
    double in_y = 0.0, in_radius = 9.0;
    int in_samples = 48;
    sc_in->add_option("--m", in_m, "index m")->required();
    sc_in->add_option("--y", in_y, "parameter y")->required();
    sc_in->add_option("--radius", in_radius, "sampling radius")->capture_default_str();
    sc_in->add_option("--samples", in_samples, "ring samples")->capture_default_str();

    // regions
    auto* sc_rg = app.add_subcommand("regions", "region tiling map of the (y, s) plane");
    double rg_eps = 0.1, rg_delta = 0.2, rg_kappa = 0.0;
    int rg_bound = 6, rg_ny = 201, rg_ns = 201;
    sc_rg->add_option("--eps", rg_eps, "semiclassical parameter")->required();
    sc_rg->add_option("--delta", rg_delta)->capture_default_str();
    sc_rg->add_option("--kappa", rg_kappa)->capture_default_str();
    sc_rg->add_option("--bound", rg_bound)->capture_default_str();
    sc_rg->add_option("--ny", rg_ny)->capture_default_str();
    sc_rg->add_option("--ns", rg_ns)->capture_default_str();

    // kinkcurves
    auto* sc_kc = app.add_subcommand("kinkcurves", "kink center curves t(z) per strip index");
    double kc_eps = 1e-5, kc_nu = 1.0 / 64.0, kc_fourNuCbrt = 0.0;
    std::string kc_mrange = "-6..7";
    double kc_zlo = -20.0, kc_zhi = 20.0;
    int kc_samples = 801;
    sc_kc->add_option("--eps", kc_eps)->required();
    sc_kc->add_option("--nu", kc_nu, "criticality constant nu")->capture_default_str();
    sc_kc->add_option("--four-nu-cbrt", kc_fourNuCbrt,
                      "set nu from the plotting convention 4 nu^{1/3} = value");
    sc_kc->add_option("--m-range", kc_mrange)->capture_default_str();
    sc_kc->add_option("--z-lo", kc_zlo)->capture_default_str();
    sc_kc->add_option("--z-hi", kc_zhi)->capture_default_str();
    sc_kc->add_option("--samples", kc_samples)->capture_default_str();

    // model
    auto* sc_md = app.add_subcommand("model", "multiscale half-angle field on the critical window");
    std::string md_profile;
    double md_eps = 0.01, md_zw = 3.0;
    int md_nx = 101, md_nt = 101, md_bound = 6;
    sc_md->add_option("--profile", md_profile)->required();
    sc_md->add_option("--eps", md_eps)->required();
    sc_md->add_option("--z-half-width", md_zw, "window half-width in the z coordinate")
        ->capture_default_str();
    std::string md_window;
    sc_md->add_option("--window", md_window, "explicit window x0:x1:t0:t1 (overrides z-half-width)");
    sc_md->add_option("--nx", md_nx)->capture_default_str();
    sc_md->add_option("--nt", md_nt)->capture_default_str();
    sc_md->add_option("--bound", md_bound)->capture_default_str();

    // pde
    auto* sc_pd = app.add_subcommand("pde", "direct leapfrog solution of the Cauchy problem");
    std::string pd_profile;
    double pd_eps = 0.1875, pd_tend = 1.0, pd_L = 21.0, pd_cfl = 0.5;
    int pd_nx = 0, pd_every = 100;
    bool pd_csv = false;
    sc_pd->add_option("--profile", pd_profile)->required();
    sc_pd->add_option("--eps", pd_eps)->required();
    sc_pd->add_option("--tend", pd_tend)->capture_default_str();
    sc_pd->add_option("--nx", pd_nx, "grid intervals (0: choose from eps)")->capture_default_str();
    sc_pd->add_option("--L", pd_L)->capture_default_str();
    sc_pd->add_option("--cfl", pd_cfl)->capture_default_str();
    sc_pd->add_option("--output-every", pd_every)->capture_default_str();
    sc_pd->add_flag("--csv", pd_csv, "write CSV frames instead of binary");

    // compare
    auto* sc_cp = app.add_subcommand("compare", "PDE vs model convergence table over an eps ladder");
    std::string cp_profile, cp_ladder = "3/16,3/32,3/64";
    int cp_bound = 4;
    double cp_cfl = 0.1;
    sc_cp->add_option("--profile", cp_profile)->required();
    sc_cp->add_option("--eps-ladder", cp_ladder)->capture_default_str();
    sc_cp->add_option("--bound", cp_bound)->capture_default_str();
    sc_cp->add_option("--cfl", cp_cfl)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::filesystem::path base(outdir);
        if (sc_h->parsed()) return cmd_hierarchy(mrange, bound, base / "hierarchy");
        if (sc_id->parsed()) return cmd_identities(profile_cfg, id_bound, base / "identities");
        if (sc_in->parsed()) return cmd_inner(in_m, in_y, in_radius, in_samples, base / "inner");
        if (sc_rg->parsed())
            return cmd_regions(rg_eps, rg_delta, rg_kappa, rg_bound, rg_ny, rg_ns, base / "regions");
        if (sc_kc->parsed()) {
            double nu = kc_nu;
            if (kc_fourNuCbrt > 0) nu = std::pow(kc_fourNuCbrt / 4.0, 3.0);
            return cmd_kinkcurves(kc_eps, nu, kc_mrange, kc_zlo, kc_zhi, kc_samples,
                                  base / "kinkcurves");
        }
        if (sc_md->parsed())
            return cmd_model(md_profile, md_eps, md_zw, md_window, md_nx, md_nt, md_bound, threads,
                             base / "model");
        if (sc_pd->parsed()) {
            if (pd_nx == 0) pd_nx = static_cast<int>(std::ceil(2.0 * pd_L / (pd_eps / 10.0)));
            return cmd_pde(pd_profile, pd_eps, pd_tend, pd_nx, pd_L, pd_cfl, pd_every, pd_csv,
                           base / "pde");
        }
        if (sc_cp->parsed()) return cmd_compare(cp_profile, cp_ladder, cp_bound, cp_cfl, base / "compare");
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}, {"command", argc > 1 ? argv[1] : ""}};
        std::cerr << err.dump(2) << std::endl;
        return 1;
    }
    return 2;
}
