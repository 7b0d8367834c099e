#include "seplab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace seplab::io {

namespace {

using nlohmann::json;

json poly_to_json(const Poly& p) {
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(mpz_class(c.num() * (lcm / c.den())).get_str());
    return {{"coeffs", coeffs}, {"denom", lcm.get_str()}};
}

Poly poly_from_json(const json& j) {
    const Rational denom = Rational::from_string(j.at("denom").get<std::string>());
    std::vector<Rational> c;
    for (const auto& s : j.at("coeffs")) c.push_back(Rational::from_string(s.get<std::string>()) / denom);
    return Poly(std::move(c));
}

json ratfun_to_json(const RatFun& f) {
    return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RatFun ratfun_from_json(const json& j) {
    return RatFun(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

json boxes_to_json(const std::vector<RootBox>& boxes) {
    json out = json::array();
    for (const auto& b : boxes)
        out.push_back({b.lo.to_string(), b.hi.to_string(), std::to_string(b.multiplicity)});
    return out;
}

std::vector<RootBox> boxes_from_json(const json& j) {
    std::vector<RootBox> out;
    for (const auto& b : j)
        out.push_back({Rational::from_string(b.at(0).get<std::string>()),
                       Rational::from_string(b.at(1).get<std::string>()),
                       std::stoi(b.at(2).get<std::string>())});
    return out;
}

}  // namespace

json entry_to_json(const HierarchyEntry& e) {
    return {{"m", e.m},          {"U", ratfun_to_json(e.U)},
            {"V", ratfun_to_json(e.V)}, {"W", ratfun_to_json(e.W)},
            {"Z", ratfun_to_json(e.Z)}, {"H", ratfun_to_json(e.H)},
            {"zerosU", boxes_to_json(e.zerosU)}, {"polesU", boxes_to_json(e.polesU)},
            {"zerosV", boxes_to_json(e.zerosV)}};
}

HierarchyEntry entry_from_json(const json& j) {
    HierarchyEntry e;
    e.m = j.at("m").get<int>();
    e.U = ratfun_from_json(j.at("U"));
    e.V = ratfun_from_json(j.at("V"));
    e.W = ratfun_from_json(j.at("W"));
    e.Z = ratfun_from_json(j.at("Z"));
    e.H = ratfun_from_json(j.at("H"));
    e.zerosU = boxes_from_json(j.at("zerosU"));
    e.polesU = boxes_from_json(j.at("polesU"));
    e.zerosV = boxes_from_json(j.at("zerosV"));
    return e;
}

json expansion_to_json(const inner::ExpansionData& e) {
    auto mat = [](const Eigen::Matrix2d& m) {
        return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
    };
    return {{"A", mat(e.A)}, {"B", mat(e.B)}, {"C", mat(e.C)}, {"fitResidual", e.fitResidual}};
}

Manifest::Manifest(std::string command, std::filesystem::path dir)
    : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(dir_);
    j_["command"] = std::move(command);
    j_["version"] = "seplab 1.0.0";
    j_["parameters"] = json::object();
    j_["outputs"] = json::array();
}

void Manifest::param(const std::string& key, const std::string& value) { j_["parameters"][key] = value; }
void Manifest::param(const std::string& key, double value) { j_["parameters"][key] = value; }
void Manifest::param(const std::string& key, long value) { j_["parameters"][key] = value; }

void Manifest::add_output(const std::filesystem::path& file) {
    j_["outputs"].push_back(file.filename().string());
}

void Manifest::write() {
    const auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    j_["wallTimeSeconds"] = wall;
    std::ofstream out(dir_ / "manifest.json");
    out << j_.dump(2) << "\n";
}

std::shared_ptr<Hierarchy> make_cached_hierarchy(int bound) {
    auto h = std::make_shared<Hierarchy>(bound);
    const char* dir = std::getenv("SEPLAB_CACHE");
    if (dir != nullptr && *dir != '\0') {
        // the memo directory is an optimization only; regenerate on any mismatch
        try {
            for (int m = -bound; m <= bound; ++m) {
                json j;
                if (load_cached_entry(dir, m, j) && j.at("m").get<int>() == m)
                    h->seed(entry_from_json(j));
            }
            save_hierarchy_cache(*h, dir);
        } catch (const std::exception&) {
        }
    }
    return h;
}

void save_hierarchy_cache(const Hierarchy& h, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (int m = -h.bound(); m <= h.bound(); ++m) {
        const auto path = dir / ("entry_" + std::to_string(m) + ".json");
        if (std::filesystem::exists(path)) continue;
        std::ofstream out(path);
        out << entry_to_json(h.entry(m)).dump() << "\n";
    }
}

bool load_cached_entry(const std::filesystem::path& dir, int m, json& out) {
    const auto path = dir / ("entry_" + std::to_string(m) + ".json");
    std::ifstream in(path);
    if (!in) return false;
    in >> out;
    return true;
}

void write_frame(const FieldFrame& f, const std::filesystem::path& stem) {
    {
        json header = {{"t", f.t},   {"nx", static_cast<long>(f.u.size()) - 1},
                       {"L", f.L},   {"eps", f.eps},
                       {"dx", f.dx}, {"layout", "u then epsUt, row-major float64"}};
        std::ofstream hout(stem.string() + ".json");
        hout << header.dump(2) << "\n";
    }
    std::ofstream bout(stem.string() + ".bin", std::ios::binary);
    bout.write(reinterpret_cast<const char*>(f.u.data()), static_cast<std::streamsize>(f.u.size() * 8));
    bout.write(reinterpret_cast<const char*>(f.epsUt.data()),
               static_cast<std::streamsize>(f.epsUt.size() * 8));
}

FieldFrame read_frame(const std::filesystem::path& stem) {
    json header;
    {
        std::ifstream hin(stem.string() + ".json");
        if (!hin) throw std::runtime_error("read_frame: missing header " + stem.string() + ".json");
        hin >> header;
    }
    FieldFrame f;
    f.t = header.at("t").get<double>();
    f.L = header.at("L").get<double>();
    f.eps = header.at("eps").get<double>();
    f.dx = header.at("dx").get<double>();
    const long n = header.at("nx").get<long>() + 1;
    f.u.resize(n);
    f.epsUt.resize(n);
    std::ifstream bin(stem.string() + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("read_frame: missing data " + stem.string() + ".bin");
    bin.read(reinterpret_cast<char*>(f.u.data()), n * 8);
    bin.read(reinterpret_cast<char*>(f.epsUt.data()), n * 8);
    if (!bin) throw std::runtime_error("read_frame: truncated data " + stem.string() + ".bin");
    return f;
}

void write_frame_csv(const FieldFrame& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "x,u,epsUt\n";
    for (long i = 0; i < f.u.size(); ++i) {
        const double x = -f.L + i * f.dx;
        out << format_double(x) << "," << format_double(f.u[i]) << "," << format_double(f.epsUt[i])
            << "\n";
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace seplab::io
