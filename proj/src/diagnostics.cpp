#include "gempic/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gempic {

double momentum1(const SequencePair& seq, const ParticleEnsemble& ens, const FieldState& f)
{
    double p = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) p += ens.m(i) * ens.v1[i];
    if (f.transverse()) {
        const auto ae2 = seq.geometric_averaging().apply(f.e2);
        const auto mb = seq.geometric_mass(0).apply(f.b3);
        for (std::size_t i = 0; i < ae2.size(); ++i) p += ae2[i] * mb[i];
    }
    return p;
}

DiagnosticsRecord compute_record(const Coupling& coupling, const SimState& s)
{
    const SequencePair& seq = coupling.seq();
    DiagnosticsRecord r;
    r.t = s.t;
    for (std::size_t p = 0; p < s.ens.size(); ++p) {
        double v2 = s.ens.v1[p] * s.ens.v1[p];
        if (s.ens.dv == 2) v2 += s.ens.v2[p] * s.ens.v2[p];
        r.kinetic += 0.5 * s.ens.m(p) * v2;
    }
    r.e1_energy = field_energy(seq, 0, s.fields.e1);
    if (s.fields.transverse()) {
        r.e2_energy = field_energy(seq, 1, s.fields.e2);
        r.b3_energy = field_energy(seq, 0, s.fields.b3);
    }
    r.total_energy = r.kinetic + r.e1_energy + r.e2_energy + r.b3_energy;
    r.momentum1 = momentum1(seq, s.ens, s.fields);
    const auto rho = coupling.deposit_rho(s.ens);
    r.gauss_residual = gauss_residual(seq, s.fields, rho);
    for (double v : rho) r.total_charge += v;
    return r;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::vector<DiagnosticsRecord>& records, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        const double row[] = {r.t,         r.kinetic,      r.e1_energy,      r.e2_energy,  r.b3_energy,
                              r.total_energy, r.momentum1, r.gauss_residual, r.total_charge};
        for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<DiagnosticsRecord> read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("bad CSV header in '" + path + "'");
    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
        if (v.size() != 9) throw std::runtime_error("bad CSV row in '" + path + "'");
        out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
    }
    return out;
}

RateFit fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& values, double t0, double t1)
{
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] > t1 || !(values[i] > 0.0)) continue;
        const double y = std::log(values[i]);
        st += t[i];
        sy += y;
        stt += t[i] * t[i];
        sty += t[i] * y;
        ++n;
    }
    RateFit f;
    f.samples = n;
    if (n < 2) return f;
    const double den = n * stt - st * st;
    f.rate = (n * sty - st * sy) / den;
    f.intercept = (sy - f.rate * st) / n;
    return f;
}

}  // namespace gempic
