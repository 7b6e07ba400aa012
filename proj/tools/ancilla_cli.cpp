// Command-line frontend: analyze a bipartite unitary end to end, construct
// unphysical-ancilla witnesses, check complete positivity for a given sigma,
// decide indirect tomography, emit gallery unitaries, and run the gallery
// regression matrix.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ancilla/ancilla.hpp"

namespace {

using namespace ancilla;

struct CommonOpts {
    int samples = 500;
    std::uint64_t seed = 42;
    double tol_rank = -1.0;
    double tol_psd = -1.0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--samples", o.samples, "membership samples")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "sampling seed");
    cmd->add_option("--tol-rank", o.tol_rank, "relative singular-value cutoff");
    cmd->add_option("--tol-psd", o.tol_psd, "allowed negative-eigenvalue magnitude");
    cmd->add_option("--out", o.out, "write output JSON to this path");
}

Tolerances tolerances_of(const CommonOpts& o) {
    Tolerances t;
    if (o.tol_rank > 0.0) t.rank_tol = o.tol_rank;
    if (o.tol_psd > 0.0) t.psd_tol = o.tol_psd;
    return t;
}

void emit(const CommonOpts& o, const std::string& json) {
    if (o.out.empty()) {
        std::cout << json << "\n";
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw validation_error("cannot write output file: " + o.out);
    f << json << "\n";
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> params;
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw validation_error("bad --param '" + kv + "', expected k=v");
        try {
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw validation_error("bad --param value in '" + kv + "'");
        }
    }
    return params;
}

// A unitary argument is either a JSON file path or an inline gallery
// reference of the form gallery:name?k=v&k2=v2.
BipartiteUnitary load_unitary(const std::string& arg) {
    if (arg.rfind("gallery:", 0) == 0) {
        std::string rest = arg.substr(8);
        std::map<std::string, double> params;
        const auto qmark = rest.find('?');
        if (qmark != std::string::npos) {
            std::string query = rest.substr(qmark + 1);
            rest = rest.substr(0, qmark);
            std::vector<std::string> kvs;
            std::size_t pos = 0;
            while (pos <= query.size()) {
                const auto amp = query.find('&', pos);
                kvs.push_back(query.substr(pos, amp == std::string::npos ? amp : amp - pos));
                if (amp == std::string::npos) break;
                pos = amp + 1;
            }
            params = parse_params(kvs);
        }
        return make_example(rest, params).unitary;
    }
    return unitary_from_json(parse_json_file(arg));
}

CMatrix load_matrix_file(const std::string& path) {
    return matrix_from_json(parse_json_file(path), path);
}

int run(int argc, char** argv) {
    CLI::App app{"ancilla model analysis: does complete positivity force a physical ancilla?"};
    app.require_subcommand(1);

    std::string unitary_arg, sigma_path, phi_path, gallery_name;
    std::vector<std::string> param_kvs;
    CommonOpts opts;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Schmidt data, physicality verdict, witness, tomography verdict");
    analyze->add_option("unitary", unitary_arg, "unitary JSON path or gallery:name?k=v")
        ->required();
    add_common(analyze, opts);

    CLI::App* witness = app.add_subcommand("witness", "construct an unphysical-ancilla witness");
    witness->add_option("unitary", unitary_arg, "unitary JSON path or gallery:name?k=v")
        ->required();
    witness->add_option("--phi", phi_path, "state vector JSON ([[re,im],...]) to use as witness");
    add_common(witness, opts);

    CLI::App* checkcp = app.add_subcommand("check-cp", "CP/TP verdict for a given (U, sigma)");
    checkcp->add_option("unitary", unitary_arg, "unitary JSON path or gallery:name?k=v")
        ->required();
    checkcp->add_option("sigma", sigma_path, "ancilla operator JSON (CMatrix)")->required();
    add_common(checkcp, opts);

    CLI::App* tomo = app.add_subcommand("tomography", "indirect-tomography verdict");
    tomo->add_option("unitary", unitary_arg, "unitary JSON path or gallery:name?k=v")->required();
    tomo->add_option("--sigma", sigma_path, "optional sigma JSON for a round-trip reconstruction");
    add_common(tomo, opts);

    CLI::App* gallery = app.add_subcommand("gallery", "emit a gallery unitary with expected facts");
    gallery->add_option("name", gallery_name, "example name")->required();
    gallery->add_option("--param", param_kvs, "parameter k=v (repeatable)");
    add_common(gallery, opts);

    CLI::App* regress = app.add_subcommand("regress", "run the gallery expected-facts matrix");
    add_common(regress, opts);

    CLI11_PARSE(app, argc, argv);
    const Tolerances tol = tolerances_of(opts);

    if (analyze->parsed()) {
        const BipartiteUnitary bu = load_unitary(unitary_arg);
        const AnalysisResult r = full_analysis(bu, opts.samples, opts.seed, tol);
        emit(opts, analysis_to_json(bu, r));
        return 0;
    }

    if (witness->parsed()) {
        const BipartiteUnitary bu = load_unitary(unitary_arg);
        const SchmidtDecomposition sd = schmidt_decompose(bu, tol);
        AncillaWitness w;
        if (!phi_path.empty()) {
            const CVector phi = vector_from_json(parse_json_file(phi_path), "phi");
            w = construct_witness(sd, phi, tol);
        } else {
            const PhysicalityReport rep = decide_physicality(sd, opts.samples, opts.seed, tol);
            auto found = best_witness(sd, rep, tol);
            if (!found)
                throw precondition_error(
                    "no S_B member found; the unitary appears to satisfy P (verdict " +
                    verdict_name(rep.verdict) + ")");
            w = *found;
        }
        JsonWriter jw;
        write_witness(jw, w);
        emit(opts, jw.str());
        return 0;
    }

    if (checkcp->parsed()) {
        const BipartiteUnitary bu = load_unitary(unitary_arg);
        const CMatrix sigma = load_matrix_file(sigma_path);
        const ChannelRep ch = build_channel(schmidt_decompose(bu, tol), sigma, tol);
        emit(opts, cp_verdict_to_json(ch));
        return 0;
    }

    if (tomo->parsed()) {
        const BipartiteUnitary bu = load_unitary(unitary_arg);
        const SchmidtDecomposition sd = schmidt_decompose(bu, tol);
        const TomographyVerdict v = allows_indirect_tomography(sd, tol);
        JsonWriter jw;
        if (!sigma_path.empty()) {
            const CMatrix sigma = load_matrix_file(sigma_path);
            const CMatrix g = build_channel(sd, sigma, tol).g;
            const SigmaReconstruction rec = reconstruct_sigma(sd, g, tol);
            write_tomography(jw, v, &rec);
        } else {
            write_tomography(jw, v);
        }
        emit(opts, jw.str());
        return 0;
    }

    if (gallery->parsed()) {
        const GalleryEntry entry = make_example(gallery_name, parse_params(param_kvs));
        emit(opts, gallery_entry_to_json(entry));
        return 0;
    }

    // regress
    const auto checks = run_gallery_regression(opts.samples, opts.seed, tol);
    int failures = 0;
    std::string report;
    for (const auto& c : checks) {
        report += (c.pass ? "[PASS] " : "[FAIL] ") + c.name;
        if (!c.pass && !c.detail.empty()) report += " (" + c.detail + ")";
        report += "\n";
        if (!c.pass) ++failures;
    }
    report += (failures == 0 ? "all " + std::to_string(checks.size()) + " checks passed"
                             : std::to_string(failures) + " of " + std::to_string(checks.size()) +
                                   " checks failed");
    if (opts.out.empty())
        std::cout << report << "\n";
    else {
        std::ofstream f(opts.out);
        f << report << "\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const unitarity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
