#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "rabi/confluence.hpp"
#include "rabi/degeneracy.hpp"
#include "rabi/equivalence.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips (at most 17 significant digits); nan, inf, -inf otherwise.
std::string format_double(double v);

/// Comma-separated rows with a mandatory header; values are written verbatim.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& os_;
    std::size_t columns_;
};

Json to_json(const ModelSpec& spec);
Json to_json(const SpectrumResult& s);
Json to_json(const MappingRecord& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const ConfluenceTable& t);
Json to_json(const IntegerConditionDiagnostic& d);
Json to_json(const CrossingRecord& r);
Json to_json(const ScanResult& r);

// columns: index, eigenvalue, certified
void write_spectrum_csv(std::ostream& os, const SpectrumResult& s);
// columns: level, status, lambda, mu, alpha, beta, eta, g, delta, epsilon, residual
void write_equivalence_csv(std::ostream& os, const EquivalenceReport& r);
// columns: level, nu, mu_prime, reference, abs_error
void write_confluence_csv(std::ostream& os, const ConfluenceTable& t);
// gnuplot blocks, one per level: log10(nu) log10(abs_error)
void write_confluence_loglog(std::ostream& os, const ConfluenceTable& t);
// columns: param, value, mu, gap, cond_int, cond_minus, cond_plus, satisfied
void write_crossings_csv(std::ostream& os, const std::vector<CrossingRecord>& records);
// columns: param, level_0 ... level_{k-1}
void write_spectral_curves_csv(std::ostream& os, const std::string& param, const ScanResult& r);

}  // namespace rabi
