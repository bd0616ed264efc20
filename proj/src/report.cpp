#include "rabi/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "rabi/errors.hpp"

namespace rabi {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), columns_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw InvalidParams("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) os_ << ',';
        os_ << cells[i];
    }
    os_ << '\n';
}

namespace {

Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

Json numbers(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
    return out;
}

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

Json to_json(const ModelSpec& spec) {
    Json j;
    j["model"] = model_name(spec);
    for (const auto& [name, value] : model_parameters(spec)) j[name] = number(value);
    return j;
}

Json to_json(const SpectrumResult& s) {
    Json j;
    j["truncation_N"] = s.truncation_N;
    j["converged_count"] = s.converged_count;
    j["certificate_tol"] = number(s.certificate_tol);
    j["unreliable"] = s.unreliable;
    j["eigenvalues"] = numbers(s.eigenvalues);
    return j;
}

Json to_json(const MappingRecord& r) {
    Json j;
    j["level"] = r.level;
    j["lambda"] = number(r.lambda);
    j["mu"] = number(r.mu);
    j["ncho"] = {{"alpha", number(r.ncho.alpha)}, {"beta", number(r.ncho.beta)}, {"eta", number(r.ncho.eta)}};
    j["qrm"] = {{"g", number(r.qrm.g)}, {"delta", number(r.qrm.delta)}, {"epsilon", number(r.qrm.epsilon)}};
    j["residual"] = number(r.residual);
    j["matched"] = r.matched;
    return j;
}

Json to_json(const EquivalenceReport& r) {
    Json j;
    j["direction"] = to_string(r.direction);
    j["sector"] = to_string(r.sector);
    j["truncation_N"] = r.truncation_N;
    j["tol"] = number(r.tol);
    j["requested_levels"] = r.requested_levels;
    j["uncertified_levels"] = r.uncertified_levels;
    j["unreliable"] = r.unreliable;
    j["all_matched"] = r.all_matched;
    j["records"] = Json::array();
    for (const auto& rec : r.records) j["records"].push_back(to_json(rec));
    j["obstructed"] = Json::array();
    for (const auto& o : r.obstructed) j["obstructed"].push_back({{"level", o.level}, {"mu", number(o.mu)}});
    return j;
}

Json to_json(const ConfluenceTable& t) {
    Json j;
    j["target"] = to_json(ModelSpec{t.target});
    j["nu_values"] = t.nu_values;
    j["levels"] = t.levels;
    j["reference"] = numbers(t.reference);
    j["mu_prime"] = Json::array();
    j["errors"] = Json::array();
    for (int k = 0; k < t.levels; ++k) {
        j["mu_prime"].push_back(numbers(t.mu_prime.row(k).transpose()));
        j["errors"].push_back(numbers(t.errors.row(k).transpose()));
    }
    j["fitted_order"] = numbers(t.fitted_order);
    j["saturated"] = t.saturated;
    return j;
}

Json to_json(const IntegerConditionDiagnostic& d) {
    Json j;
    j["raw_values"] = Json::array();
    for (double v : d.raw_values) j["raw_values"].push_back(number(v));
    j["nearest_integers"] = d.nearest_integers;
    j["deviations"] = Json::array();
    for (double v : d.deviations) j["deviations"].push_back(number(v));
    j["satisfied"] = d.satisfied;
    return j;
}

Json to_json(const CrossingRecord& r) {
    Json j;
    j["param"] = r.swept_parameter_name;
    j["value"] = number(r.swept_value);
    j["mu"] = number(r.eigen_value);
    j["gap"] = number(r.min_gap);
    j["grid_gap"] = number(r.grid_gap);
    j["lower_level"] = r.lower_level;
    j["certified"] = r.certified;
    j["diagnostics"] = to_json(r.diagnostics);
    return j;
}

Json to_json(const ScanResult& r) {
    auto list = [](const std::vector<CrossingRecord>& v) {
        Json a = Json::array();
        for (const auto& rec : v) a.push_back(to_json(rec));
        return a;
    };
    Json j;
    j["grid_points"] = r.grid.size();
    j["crossings"] = list(r.crossings);
    j["unresolved"] = list(r.unresolved);
    j["avoided"] = list(r.avoided);
    j["necessity_holds"] = necessity_holds(r);
    return j;
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& s) {
    CsvWriter csv(os, {"index", "eigenvalue", "certified"});
    for (Eigen::Index k = 0; k < s.size(); ++k)
        csv.row({std::to_string(k), format_double(s.eigenvalues(k)), flag(k < s.converged_count)});
}

void write_equivalence_csv(std::ostream& os, const EquivalenceReport& r) {
    CsvWriter csv(os, {"level", "status", "lambda", "mu", "alpha", "beta", "eta", "g", "delta", "epsilon", "residual"});
    for (const auto& rec : r.records)
        csv.row({std::to_string(rec.level), rec.matched ? "matched" : "unmatched", format_double(rec.lambda),
                 format_double(rec.mu), format_double(rec.ncho.alpha), format_double(rec.ncho.beta),
                 format_double(rec.ncho.eta), format_double(rec.qrm.g), format_double(rec.qrm.delta),
                 format_double(rec.qrm.epsilon), format_double(rec.residual)});
    for (const auto& o : r.obstructed)
        csv.row({std::to_string(o.level), "obstructed", "", format_double(o.mu), "", "", "", "", "", "", ""});
}

void write_confluence_csv(std::ostream& os, const ConfluenceTable& t) {
    CsvWriter csv(os, {"level", "nu", "mu_prime", "reference", "abs_error"});
    for (int k = 0; k < t.levels; ++k)
        for (std::size_t j = 0; j < t.nu_values.size(); ++j) {
            const auto c = static_cast<Eigen::Index>(j);
            csv.row({std::to_string(k), format_double(t.nu_values[j]), format_double(t.mu_prime(k, c)),
                     format_double(t.reference(k)), format_double(t.errors(k, c))});
        }
}

void write_confluence_loglog(std::ostream& os, const ConfluenceTable& t) {
    os << "# log10(nu) log10(abs_error); one gnuplot index per level\n";
    for (int k = 0; k < t.levels; ++k) {
        os << "# level " << k << (t.saturated[static_cast<std::size_t>(k)] ? " (saturated)" : "") << '\n';
        for (std::size_t j = 0; j < t.nu_values.size(); ++j) {
            const double e = t.errors(k, static_cast<Eigen::Index>(j));
            os << format_double(std::log10(t.nu_values[j])) << ' ' << format_double(e > 0 ? std::log10(e) : -INFINITY)
               << '\n';
        }
        os << "\n\n";
    }
}

void write_crossings_csv(std::ostream& os, const std::vector<CrossingRecord>& records) {
    CsvWriter csv(os, {"param", "value", "mu", "gap", "cond_int", "cond_minus", "cond_plus", "satisfied"});
    for (const auto& r : records) {
        const auto& raw = r.diagnostics.raw_values;
        csv.row({r.swept_parameter_name, format_double(r.swept_value), format_double(r.eigen_value),
                 format_double(r.min_gap), format_double(raw.at(0)), format_double(raw.at(1)), format_double(raw.at(2)),
                 flag(r.diagnostics.satisfied)});
    }
}

void write_spectral_curves_csv(std::ostream& os, const std::string& param, const ScanResult& r) {
    std::vector<std::string> header{param};
    for (Eigen::Index k = 0; k < r.levels.cols(); ++k) header.push_back("level_" + std::to_string(k));
    CsvWriter csv(os, header);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        std::vector<std::string> cells{format_double(r.grid[i])};
        for (Eigen::Index k = 0; k < r.levels.cols(); ++k)
            cells.push_back(format_double(r.levels(static_cast<Eigen::Index>(i), k)));
        csv.row(cells);
    }
}

}  // namespace rabi
