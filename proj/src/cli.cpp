#include "rabi/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rabi/confluence.hpp"
#include "rabi/degeneracy.hpp"
#include "rabi/equivalence.hpp"
#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/report.hpp"
#include "rabi/spectrum.hpp"

namespace rabi::cli {

namespace fs = std::filesystem;

ModelSpec model_from_config(const RunConfig& cfg) {
    if (cfg.model == "ncho") return NchoParams{cfg.alpha, cfg.beta, cfg.eta};
    if (cfg.model == "2qrm") return TwoQrmParams{cfg.g, cfg.delta, cfg.epsilon};
    if (cfg.model == "disk") return DiskParams{cfg.nu, cfg.g, cfg.delta, cfg.epsilon};
    if (cfg.model == "1qrm") return OneQrmParams{cfg.gp, cfg.dp, cfg.ep};
    throw InvalidParams("unknown model '" + cfg.model + "' (expected ncho, 2qrm, disk or 1qrm)");
}

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

class OutputDir {
public:
    explicit OutputDir(const std::string& dir) : root_(dir) {
        std::error_code ec;
        fs::create_directories(root_, ec);
        if (ec) throw InvalidParams("cannot create output directory '" + dir + "': " + ec.message());
    }

    template <typename Writer>
    fs::path write(const std::string& name, Writer&& writer) const {
        const fs::path path = root_ / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw InvalidParams("cannot open '" + path.string() + "' for writing");
        writer(os);
        return path;
    }

    fs::path write_json(const std::string& name, const Json& j) const {
        return write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }

private:
    fs::path root_;
};

Json base_config(const RunConfig& cfg) {
    Json c;
    c["truncation_N"] = cfg.truncation;
    c["sector"] = cfg.sector;
    c["certificate_tol"] = cfg.cert_tol;
    return c;
}

Json document(const std::string& command, Json config, Json results, Json certificates) {
    Json j;
    j["command"] = command;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["certificates"] = std::move(certificates);
    return j;
}

void write_sidecar(const OutputDir& dir, const std::string& command, const std::string& started, double seconds) {
    Json meta;
    meta["command"] = command;
    meta["started_utc"] = started;
    meta["finished_utc"] = utc_now();
    meta["wall_seconds"] = seconds;
    dir.write_json(command + ".meta.json", meta);
}

Eigen::Index require_truncation(const RunConfig& cfg, long minimum) {
    if (cfg.truncation < minimum)
        throw InvalidTruncation("--N must be at least " + std::to_string(minimum));
    return static_cast<Eigen::Index>(cfg.truncation);
}

int cmd_spectrum(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    const ModelSpec spec = model_from_config(cfg);
    validate(spec);
    const ParitySector sector = parse_sector(cfg.sector);
    const auto n = require_truncation(cfg, 4);
    if (!conserves_photon_parity(spec) && sector != ParitySector::Full)
        throw ParityError(model_name(spec) + " has no photon-parity sectors; use --sector full");

    const SpectrumResult s = converged_spectrum(spec, sector, n, cfg.cert_tol);
    Json config = to_json(spec);
    config.update(base_config(cfg));
    Json certs;
    certs["converged_count"] = s.converged_count;
    certs["certificate_tol"] = s.certificate_tol;
    certs["compared_truncations"] = {n, certificate_truncation(n)};
    certs["unreliable"] = s.unreliable;

    dir.write("spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, s); });
    dir.write_json("spectrum.json", document("spectrum", config, to_json(s), certs));
    if (!cfg.dump_matrix.empty()) {
        std::ofstream os(cfg.dump_matrix, std::ios::binary);
        if (!os) throw InvalidParams("cannot open matrix dump path '" + cfg.dump_matrix + "'");
        write_matrix_dump(os, build(spec, n, sector));
    }
    out << model_name(spec) << " sector=" << cfg.sector << " N=" << n << ": " << s.size() << " eigenvalues, "
        << s.converged_count << " certified" << (s.unreliable ? " (collapse regime: spectrum unreliable)" : "")
        << '\n';
    return kSuccess;
}

int cmd_verify(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    const ParitySector sector = parse_sector(cfg.sector);
    Json config = base_config(cfg);
    config["check"] = cfg.check;

    if (cfg.check == "forward" || cfg.check == "reverse") {
        VerifyOptions opts;
        opts.n_levels = cfg.levels;
        opts.truncation = require_truncation(cfg, 4);
        opts.match_tol = cfg.tol > 0 ? cfg.tol : kDefaultMatchTol;
        opts.certificate_tol = cfg.cert_tol;
        opts.sector = sector;
        opts.threads = cfg.threads;
        config["levels"] = opts.n_levels;
        config["tol"] = opts.match_tol;

        EquivalenceReport report;
        if (cfg.check == "forward") {
            const NchoParams p{cfg.alpha, cfg.beta, cfg.eta};
            validate(p);
            config["model"] = to_json(ModelSpec{p});
            report = verify_ncho_to_2qrm(p, opts);
        } else {
            const TwoQrmParams q{cfg.g, cfg.delta, cfg.epsilon};
            validate(q);
            config["model"] = to_json(ModelSpec{q});
            report = verify_2qrm_to_ncho(q, opts);
        }
        Json certs;
        certs["certificate_tol"] = opts.certificate_tol;
        certs["uncertified_levels"] = report.uncertified_levels;
        certs["unreliable"] = report.unreliable;
        dir.write("verify.csv", [&](std::ostream& os) { write_equivalence_csv(os, report); });
        dir.write_json("verify.json", document("verify", config, to_json(report), certs));

        if (report.unreliable) {
            out << "collapse regime: truncated spectra are not trustworthy here, no matches asserted\n";
            return kChecksFailed;
        }
        std::size_t matched = 0;
        for (const auto& r : report.records) matched += r.matched ? 1 : 0;
        out << to_string(report.direction) << ": " << matched << '/' << report.records.size() << " levels matched, "
            << report.obstructed.size() << " obstructed, " << report.uncertified_levels << " uncertified\n";
        return report.all_matched ? kSuccess : kChecksFailed;
    }

    const auto m = require_truncation(cfg, 2);
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-13;
    config["M"] = m;
    config["tol"] = tol;
    bool pass = true;
    Json results;
    if (cfg.check == "disk") {
        const TwoQrmParams q{cfg.g, cfg.delta, cfg.epsilon};
        validate(q);
        config["model"] = to_json(ModelSpec{q});
        const auto dev = verify_parity_disk_identity(q, m);
        results = {{"even_vs_nu_1_2", dev.even}, {"odd_vs_nu_3_2", dev.odd}};
        dir.write("verify.csv", [&](std::ostream& os) {
            CsvWriter csv(os, {"sector", "nu", "max_deviation"});
            csv.row({"even", "0.5", format_double(dev.even)});
            csv.row({"odd", "1.5", format_double(dev.odd)});
        });
        pass = dev.even <= tol && dev.odd <= tol;
        out << "parity/disk identity: even " << format_double(dev.even) << ", odd " << format_double(dev.odd) << '\n';
    } else if (cfg.check == "dictionary") {
        const DictionaryDeviation half = basis_correspondence_check(m, 0.5);
        const DictionaryDeviation three_half = basis_correspondence_check(m, 1.5);
        auto as_json = [](const DictionaryDeviation& d) {
            return Json{{"number_operator", d.number_operator}, {"lowering", d.lowering}, {"raising", d.raising}};
        };
        results = {{"nu_1_2", as_json(half)}, {"nu_3_2", as_json(three_half)}};
        dir.write("verify.csv", [&](std::ostream& os) {
            CsvWriter csv(os, {"nu", "operator", "max_deviation"});
            for (const auto& [nu, d] : {std::pair{"0.5", half}, std::pair{"1.5", three_half}}) {
                csv.row({nu, "number_operator", format_double(d.number_operator)});
                csv.row({nu, "lowering", format_double(d.lowering)});
                csv.row({nu, "raising", format_double(d.raising)});
            }
        });
        for (const auto& d : {half, three_half})
            pass = pass && d.number_operator <= tol && d.lowering <= tol && d.raising <= tol;
        out << "operator dictionary M=" << m << ": " << (pass ? "exact" : "deviates") << '\n';
    } else {
        throw InvalidParams("unknown --check '" + cfg.check + "' (forward, reverse, disk, dictionary)");
    }
    results["pass"] = pass;
    dir.write_json("verify.json", document("verify", config, results, Json::object()));
    return pass ? kSuccess : kChecksFailed;
}

int cmd_confluence(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    const OneQrmParams o{cfg.gp, cfg.dp, cfg.ep};
    validate(o);
    if (!(cfg.band_lo <= cfg.band_hi)) throw InvalidParams("order band needs lo <= hi");
    ConfluenceOptions opts;
    opts.n_levels = cfg.levels;
    opts.truncation = require_truncation(cfg, 4);
    opts.tol = cfg.cert_tol;
    opts.threads = cfg.threads;

    const ConfluenceTable t = confluence_study(o, cfg.nu_values, opts);
    bool pass = true;
    for (int k = 0; k < t.levels; ++k) {
        if (t.saturated[static_cast<std::size_t>(k)]) continue;
        const double p = t.fitted_order(k);
        pass = pass && p >= cfg.band_lo && p <= cfg.band_hi;
    }

    Json config = to_json(ModelSpec{o});
    config["nu"] = cfg.nu_values;
    config["levels"] = cfg.levels;
    config["truncation_N"] = opts.truncation;
    config["certificate_tol"] = opts.tol;
    config["order_band"] = {cfg.band_lo, cfg.band_hi};
    Json results = to_json(t);
    results["pass"] = pass;
    dir.write("confluence.csv", [&](std::ostream& os) { write_confluence_csv(os, t); });
    dir.write("confluence_loglog.dat", [&](std::ostream& os) { write_confluence_loglog(os, t); });
    dir.write_json("confluence.json", document("confluence", config, results, {{"certificate_tol", opts.tol}}));

    for (int k = 0; k < t.levels; ++k)
        out << "level " << k << ": "
            << (t.saturated[static_cast<std::size_t>(k)] ? std::string("saturated")
                                                          : "order " + format_double(t.fitted_order(k)))
            << '\n';
    return pass ? kSuccess : kChecksFailed;
}

int cmd_degeneracy(const RunConfig& cfg, const OutputDir& dir, std::ostream& out) {
    const ModelSpec spec = model_from_config(cfg);
    validate(spec);
    SweepSpec sweep{cfg.sweep, cfg.lo, cfg.hi, cfg.grid};
    get_parameter(spec, sweep.parameter);
    ScanOptions opts;
    opts.sector = parse_sector(cfg.sector);
    opts.n_levels = cfg.levels;
    opts.truncation = require_truncation(cfg, 4);
    opts.gap_threshold = cfg.gap_threshold;
    opts.tol_int = cfg.tol_int;
    opts.certificate_tol = cfg.cert_tol;
    opts.threads = cfg.threads;

    const ScanResult r = scan_crossings(spec, sweep, opts);
    Json config = to_json(spec);
    config.update(base_config(cfg));
    config["sweep"] = {{"param", sweep.parameter}, {"lo", sweep.lo}, {"hi", sweep.hi}, {"points", sweep.points}};
    config["levels"] = opts.n_levels;
    config["gap_threshold"] = opts.gap_threshold;
    config["tol_int"] = opts.tol_int;
    dir.write("crossings.csv", [&](std::ostream& os) { write_crossings_csv(os, r.crossings); });
    dir.write("spectral_curves.csv", [&](std::ostream& os) { write_spectral_curves_csv(os, sweep.parameter, r); });
    dir.write_json("degeneracy.json",
                   document("degeneracy", config, to_json(r), {{"certificate_tol", opts.certificate_tol}}));

    const bool pass = necessity_holds(r);
    out << r.crossings.size() << " crossings, " << r.unresolved.size() << " unresolved, " << r.avoided.size()
        << " avoided; necessity " << (pass ? "holds" : "VIOLATED") << '\n';
    return pass ? kSuccess : kChecksFailed;
}

void add_model_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("--model", cfg.model, "ncho | 2qrm | disk | 1qrm")->capture_default_str();
    app->add_option("--alpha", cfg.alpha, "NCHO alpha")->capture_default_str();
    app->add_option("--beta", cfg.beta, "NCHO beta")->capture_default_str();
    app->add_option("--eta", cfg.eta, "NCHO shift eta")->capture_default_str();
    app->add_option("--g", cfg.g, "two-photon / disk coupling")->capture_default_str();
    app->add_option("--delta", cfg.delta, "Delta")->capture_default_str();
    app->add_option("--epsilon", cfg.epsilon, "bias epsilon")->capture_default_str();
    app->add_option("--gp", cfg.gp, "one-photon coupling g'")->capture_default_str();
    app->add_option("--dp", cfg.dp, "one-photon Delta'")->capture_default_str();
    app->add_option("--ep", cfg.ep, "one-photon epsilon'")->capture_default_str();
}

void add_common_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("--N", cfg.truncation, "basis functions retained per spin component")->capture_default_str();
    app->add_option("--sector", cfg.sector, "even | odd | full")->capture_default_str();
    app->add_option("--cert-tol", cfg.cert_tol, "truncation certificate tolerance")->capture_default_str();
    app->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app->add_option("--threads", cfg.threads, "parallel solves")->capture_default_str();
    app->add_option("--seed", cfg.seed, "reserved")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Spectra and cross-checks for NCHO, two-photon Rabi, disk and one-photon Rabi models", "rabi"};
    app.set_config("--config", "", "key = value config file (INI/TOML); flags take precedence");
    app.require_subcommand(1);

    auto* spectrum = app.add_subcommand("spectrum", "certified spectrum of one model");
    add_model_options(spectrum, cfg);
    add_common_options(spectrum, cfg);
    spectrum->add_option("--nu", cfg.nu, "disk weight nu")->capture_default_str();
    spectrum->add_option("--dump-matrix", cfg.dump_matrix, "write the truncated matrix as text");

    auto* verify = app.add_subcommand("verify", "NCHO <-> two-photon equivalence and basis identities");
    add_model_options(verify, cfg);
    add_common_options(verify, cfg);
    verify->add_option("--check", cfg.check, "forward | reverse | disk | dictionary")->capture_default_str();
    verify->add_option("--levels", cfg.levels, "levels to verify")->capture_default_str();
    verify->add_option("--tol", cfg.tol, "match tolerance (default 1e-7; 1e-13 for disk/dictionary)");

    auto* confluence = app.add_subcommand("confluence", "disk model -> one-photon model as nu grows");
    add_model_options(confluence, cfg);
    add_common_options(confluence, cfg);
    confluence->add_option("--nu", cfg.nu_values, "ascending nu values")->delimiter(',')->capture_default_str();
    confluence->add_option("--levels", cfg.levels, "levels to track")->capture_default_str();
    confluence->add_option("--band-lo", cfg.band_lo, "lowest accepted fitted order")->capture_default_str();
    confluence->add_option("--band-hi", cfg.band_hi, "highest accepted fitted order")->capture_default_str();

    auto* degeneracy = app.add_subcommand("degeneracy", "scan for level crossings and test the integer conditions");
    add_model_options(degeneracy, cfg);
    add_common_options(degeneracy, cfg);
    degeneracy->add_option("--nu", cfg.nu, "disk weight nu")->capture_default_str();
    degeneracy->add_option("--sweep", cfg.sweep, "parameter to sweep")->capture_default_str();
    degeneracy->add_option("--lo", cfg.lo, "sweep start (excluded)")->capture_default_str();
    degeneracy->add_option("--hi", cfg.hi, "sweep end (included)")->capture_default_str();
    degeneracy->add_option("--grid", cfg.grid, "grid points")->capture_default_str();
    degeneracy->add_option("--levels", cfg.levels, "levels to track")->capture_default_str();
    degeneracy->add_option("--gap-threshold", cfg.gap_threshold, "crossing gap threshold")->capture_default_str();
    degeneracy->add_option("--tol-int", cfg.tol_int, "integer-condition tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kConfigError;
    }

    const auto started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const OutputDir dir(cfg.out_dir);
        int code = kSuccess;
        std::string name;
        if (*spectrum) {
            name = "spectrum";
            code = cmd_spectrum(cfg, dir, out);
        } else if (*verify) {
            name = "verify";
            code = cmd_verify(cfg, dir, out);
        } else if (*confluence) {
            name = "confluence";
            code = cmd_confluence(cfg, dir, out);
        } else {
            name = "degeneracy";
            code = cmd_degeneracy(cfg, dir, out);
        }
        write_sidecar(dir, name, started,
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return code;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("rabi");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rabi::cli
