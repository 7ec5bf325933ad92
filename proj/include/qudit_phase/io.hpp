#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qudit_phase/asymptotics.hpp"
#include "qudit_phase/completeness.hpp"
#include "qudit_phase/quasiprob.hpp"

namespace qudit_phase {

/// 17 significant digits; round-trips doubles exactly.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// CSV with "# key=value" comment lines, then header alpha,beta,value.
void write_distribution_csv(const QuasiDistribution& dist, const std::string& path,
                            const Metadata& metadata = {});

/// JSON object {d, kind, values (row-major), seed?, generator_version}.
void write_distribution_json(const QuasiDistribution& dist, const std::string& path,
                             std::optional<std::uint64_t> seed);

/// CSV of the f and g tables on centered indices: m,n,f_re,f_im,g.
void write_coeff_csv(const FourierCoeffTable& table, const std::string& path,
                     const Metadata& metadata = {});

/// JSON report {d, parity, zero_set, min_abs_f, min_g} plus metadata.
void write_completeness_report_json(const FourierCoeffTable& table, double tol,
                                    const std::string& path, const Metadata& metadata = {});

void write_h_table_csv(const std::vector<HTableRow>& rows, const std::string& path,
                       const Metadata& metadata = {});

void write_gamma_table_csv(const std::vector<GammaTableRow>& rows, const std::string& path,
                           const Metadata& metadata = {});

} // namespace qudit_phase
