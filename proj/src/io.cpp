#include "gpflow/io.hpp"

#include "gpflow/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gpflow::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return in;
}

} // namespace

void write_profile(const std::filesystem::path& path, const AngleProfile& prof) {
    prof.validate();
    std::ofstream out = open_out(path);
    json header = {
        {"format", "gpflow-profile"}, {"s_a", prof.s_a},
        {"s_b", prof.s_b},            {"n", prof.n},
        {"theta_minus", prof.theta_minus}, {"theta_plus", prof.theta_plus},
        {"t", prof.t},                {"u0", prof.pair.u0},
        {"v0", prof.pair.v0},
    };
    out << "# " << header.dump() << "\n";
    out << "s,theta\n";
    for (std::size_t j = 0; j <= prof.n; ++j)
        out << format_double(prof.s_at(j)) << ',' << format_double(prof.theta[j]) << "\n";
}

AngleProfile read_profile(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
        throw BadProfile("read_profile: missing JSON header line in " + path.string());
    const json header = json::parse(line.substr(1));
    AngleProfile prof;
    prof.s_a = header.at("s_a").get<double>();
    prof.s_b = header.at("s_b").get<double>();
    prof.n = header.at("n").get<std::size_t>();
    prof.theta_minus = header.at("theta_minus").get<double>();
    prof.theta_plus = header.at("theta_plus").get<double>();
    prof.t = header.at("t").get<double>();
    prof.pair.u0 = header.at("u0").get<double>();
    prof.pair.v0 = header.at("v0").get<double>();
    std::getline(in, line); // column header
    prof.theta.reserve(prof.n + 1);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw BadProfile("read_profile: malformed row in " + path.string());
        prof.theta.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    prof.validate();
    return prof;
}

void write_curve(const std::filesystem::path& path, const CurveSamples& curve) {
    std::ofstream out = open_out(path);
    const cplx gap = closure_gap(curve);
    json header = {
        {"format", "gpflow-curve"},
        {"t", curve.t},
        {"s_a", curve.s_a},
        {"s_b", curve.s_b},
        {"gap_re", gap.real()},
        {"gap_im", gap.imag()},
        {"area", enclosed_area(curve)},
    };
    out << "# " << header.dump() << "\n";
    out << "s,re_z,im_z\n";
    const double ds = curve.ds();
    for (std::size_t j = 0; j < curve.z.size(); ++j) {
        const double s = curve.s_a + static_cast<double>(j) * ds;
        out << format_double(s) << ',' << format_double(curve.z[j].real()) << ','
            << format_double(curve.z[j].imag()) << "\n";
    }
}

void write_trajectory(const std::filesystem::path& path, const ProfileSolution& prof) {
    std::ofstream out = open_out(path);
    out << "x,u,v,gamma\n";
    for (std::size_t i = 0; i < prof.size(); ++i)
        out << format_double(prof.x[i]) << ',' << format_double(prof.u[i]) << ','
            << format_double(prof.v[i]) << ',' << format_double(prof.gamma[i]) << "\n";
}

void write_pairs(const std::filesystem::path& path, const std::vector<InitialPair>& pairs) {
    std::ofstream out = open_out(path);
    out << "u0,v0\n";
    for (const InitialPair& p : pairs)
        out << format_double(p.u0) << ',' << format_double(p.v0) << "\n";
}

std::vector<InitialPair> read_pairs(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<InitialPair> pairs;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("read_pairs: malformed row");
        pairs.push_back({std::strtod(line.c_str(), nullptr),
                         std::strtod(line.c_str() + comma + 1, nullptr)});
    }
    return pairs;
}

void write_raster(const std::filesystem::path& path, const std::vector<RasterCell>& cells) {
    std::ofstream out = open_out(path);
    out << "u0,v0,verdict\n";
    for (const RasterCell& c : cells) {
        int code = 0;
        if (c.non_finite)
            code = 9;
        else if (c.verdict.sign == BlowupSign::PlusInfinity)
            code = 1;
        else if (c.verdict.sign == BlowupSign::MinusInfinity)
            code = -1;
        out << format_double(c.pair.u0) << ',' << format_double(c.pair.v0) << ',' << code
            << "\n";
    }
}

void write_scan(const std::filesystem::path& path, const std::vector<IntegralScanRow>& rows) {
    std::ofstream out = open_out(path);
    out << "u0,v0,integral\n";
    for (const IntegralScanRow& r : rows)
        out << format_double(r.pair.u0) << ',' << format_double(r.pair.v0) << ','
            << format_double(r.integral) << "\n";
}

void write_diagnostics(const std::filesystem::path& path,
                       const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out = open_out(path);
    out << "t,energy,k0,k0_exact,closure_error,area,support_width\n";
    for (const DiagnosticsRecord& r : records) {
        out << format_double(r.t) << ',' << format_double(r.energy) << ','
            << format_double(r.k0) << ',' << format_double(r.k0_exact) << ',';
        if (r.closure_error) out << format_double(*r.closure_error);
        out << ',';
        if (r.area) out << format_double(*r.area);
        out << ',' << format_double(r.support_width) << "\n";
    }
}

void write_track(const std::filesystem::path& path,
                 const std::vector<PointTracker::Sample>& samples) {
    std::ofstream out = open_out(path);
    out << "t,theta,re_z,im_z\n";
    for (const auto& s : samples)
        out << format_double(s.t) << ',' << format_double(s.theta) << ','
            << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << "\n";
}

} // namespace gpflow::io
