#include "qudit_phase/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qudit_phase/random.hpp"

namespace qudit_phase {

namespace {

using json = nlohmann::ordered_json;

std::string metadata_comments(const Metadata& metadata) {
    std::string out;
    for (const auto& [key, value] : metadata) out += "# " + key + "=" + value + "\n";
    return out;
}

void attach_metadata(json& j, const Metadata& metadata) {
    for (const auto& [key, value] : metadata) j[key] = value;
}

const char* kind_name(PhasePointKind kind) {
    return kind == PhasePointKind::husimi ? "husimi" : "wigner";
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_distribution_csv(const QuasiDistribution& dist, const std::string& path,
                            const Metadata& metadata) {
    std::string out = metadata_comments(metadata);
    out += "alpha,beta,value\n";
    for (int alpha = 0; alpha < dist.d; ++alpha)
        for (int beta = 0; beta < dist.d; ++beta)
            out += std::to_string(alpha) + "," + std::to_string(beta) + "," +
                   format_double(dist.values(alpha, beta)) + "\n";
    write_text_file(path, out);
}

void write_distribution_json(const QuasiDistribution& dist, const std::string& path,
                             std::optional<std::uint64_t> seed) {
    json j;
    j["d"] = dist.d;
    j["kind"] = kind_name(dist.kind);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(dist.d) * dist.d);
    for (int alpha = 0; alpha < dist.d; ++alpha)
        for (int beta = 0; beta < dist.d; ++beta) values.push_back(dist.values(alpha, beta));
    j["values"] = values;
    if (seed) j["seed"] = *seed;
    j["generator_version"] = std::string(kGeneratorVersion);
    write_text_file(path, j.dump(2) + "\n");
}

void write_coeff_csv(const FourierCoeffTable& table, const std::string& path,
                     const Metadata& metadata) {
    std::string out = metadata_comments(metadata);
    out += "m,n,f_re,f_im,g\n";
    const int lo = table.centered_lo();
    for (int i = 0; i < table.d; ++i)
        for (int j = 0; j < table.d; ++j) {
            const int m = lo + i, n = lo + j;
            const Complex f = table.f_at(m, n);
            out += std::to_string(m) + "," + std::to_string(n) + "," +
                   format_double(f.real()) + "," + format_double(f.imag()) + "," +
                   format_double(table.g(i, j)) + "\n";
        }
    write_text_file(path, out);
}

void write_completeness_report_json(const FourierCoeffTable& table, double tol,
                                    const std::string& path, const Metadata& metadata) {
    json j;
    j["d"] = table.d;
    j["parity"] = table.d % 2 == 0 ? "even" : "odd";
    json zeros = json::array();
    for (const auto& [m, n] : zero_set(table, tol)) zeros.push_back({m, n});
    j["zero_set"] = zeros;
    j["min_abs_f"] = table.f.cwiseAbs().minCoeff();
    j["min_g"] = table.g.minCoeff();
    attach_metadata(j, metadata);
    write_text_file(path, j.dump(2) + "\n");
}

void write_h_table_csv(const std::vector<HTableRow>& rows, const std::string& path,
                       const Metadata& metadata) {
    std::string out = metadata_comments(metadata);
    out += "d,h_exact,h_asym\n";
    for (const auto& row : rows)
        out += std::to_string(row.d) + "," + format_double(row.h_exact) + "," +
               format_double(row.h_asym) + "\n";
    write_text_file(path, out);
}

void write_gamma_table_csv(const std::vector<GammaTableRow>& rows, const std::string& path,
                           const Metadata& metadata) {
    std::string out = metadata_comments(metadata);
    out += "a,gamma_exact,gamma_asym\n";
    for (const auto& row : rows)
        out += std::to_string(row.a) + "," + format_double(row.exact) + "," +
               format_double(row.asym) + "\n";
    write_text_file(path, out);
}

} // namespace qudit_phase
