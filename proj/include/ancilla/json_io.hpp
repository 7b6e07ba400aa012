#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ancilla/analysis.hpp"
#include "ancilla/channel.hpp"
#include "ancilla/gallery.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/sic.hpp"

namespace ancilla {

// ---------------------------------------------------------------------------
// Deterministic JSON writer. Floating-point values are always serialized
// with 17 significant digits so identical inputs give identical bytes.
// ---------------------------------------------------------------------------

class JsonWriter {
public:
    JsonWriter& begin_object() {
        separator();
        out_ << '{';
        fresh_ = true;
        return *this;
    }
    JsonWriter& end_object() {
        out_ << '}';
        fresh_ = false;
        return *this;
    }
    JsonWriter& begin_array() {
        separator();
        out_ << '[';
        fresh_ = true;
        return *this;
    }
    JsonWriter& end_array() {
        out_ << ']';
        fresh_ = false;
        return *this;
    }
    JsonWriter& key(const std::string& k) {
        separator();
        write_string(k);
        out_ << ':';
        fresh_ = true;
        return *this;
    }
    JsonWriter& value(double x) {
        separator();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out_ << buf;
        return *this;
    }
    JsonWriter& value(long long x) {
        separator();
        out_ << x;
        return *this;
    }
    JsonWriter& value(int x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(std::size_t x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(bool b) {
        separator();
        out_ << (b ? "true" : "false");
        return *this;
    }
    JsonWriter& value(const std::string& s) {
        separator();
        write_string(s);
        return *this;
    }
    JsonWriter& null() {
        separator();
        out_ << "null";
        return *this;
    }

    std::string str() const { return out_.str(); }

private:
    void separator() {
        if (!fresh_) out_ << ',';
        fresh_ = false;
    }
    void write_string(const std::string& s) {
        out_ << '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ << "\\\""; break;
                case '\\': out_ << "\\\\"; break;
                case '\n': out_ << "\\n"; break;
                case '\t': out_ << "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ << buf;
                    } else {
                        out_ << c;
                    }
            }
        }
        out_ << '"';
    }

    std::ostringstream out_;
    bool fresh_ = true;
};

// ---------------------------------------------------------------------------
// Parsing. Matrices travel as {"rows": n, "cols": m, "data": [[re, im], ...]}
// in row-major order; vectors as [[re, im], ...].
// ---------------------------------------------------------------------------

inline CVector vector_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw validation_error(where + ": expected an array of [re, im] pairs");
    CVector v;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& e = j[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw validation_error(where + "[" + std::to_string(k) + "]: expected [re, im]");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

inline CMatrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw validation_error(where + ": expected {\"rows\", \"cols\", \"data\"}");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw validation_error(where + ": rows/cols must be nonnegative integers");
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    const CVector data = vector_from_json(j["data"], where + ".data");
    if (data.size() != rows * cols)
        throw validation_error(where + ".data: has " + std::to_string(data.size()) +
                               " entries, expected rows*cols = " + std::to_string(rows * cols));
    CMatrix m = unvec(data, rows, cols);
    if (!m.all_finite()) throw validation_error(where + ".data: non-finite entry");
    return m;
}

inline BipartiteUnitary unitary_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("d_a") || !j.contains("d_b") || !j.contains("u"))
        throw validation_error("unitary: expected {\"d_a\", \"d_b\", \"u\"}");
    if (!j["d_a"].is_number_unsigned() || !j["d_b"].is_number_unsigned())
        throw validation_error("unitary: d_a and d_b must be nonnegative integers");
    return BipartiteUnitary(matrix_from_json(j["u"], "unitary.u"), j["d_a"].get<std::size_t>(),
                            j["d_b"].get<std::size_t>());
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

inline void write_vector(JsonWriter& w, const CVector& v) {
    w.begin_array();
    for (const cx& z : v) {
        w.begin_array().value(z.real()).value(z.imag()).end_array();
    }
    w.end_array();
}

inline void write_matrix(JsonWriter& w, const CMatrix& m) {
    w.begin_object();
    w.key("rows").value(m.rows());
    w.key("cols").value(m.cols());
    w.key("data");
    write_vector(w, vec(m));
    w.end_object();
}

inline void write_witness(JsonWriter& w, const AncillaWitness& wit) {
    w.begin_object();
    w.key("phi");
    write_vector(w, wit.phi);
    w.key("delta").value(wit.delta);
    w.key("epsilon").value(wit.epsilon);
    w.key("sigma");
    write_matrix(w, wit.sigma);
    w.key("cp_certificate").value(wit.cp_certificate);
    w.end_object();
}

inline void write_physicality(JsonWriter& w, const PhysicalityReport& rep,
                              const std::optional<AncillaWitness>& wit) {
    w.begin_object();
    w.key("r_u").value(rep.r_u);
    w.key("dim_ob").value(rep.dim_ob);
    w.key("p1").value(rep.p1);
    w.key("p2").value(rep.p2);
    w.key("q1").value(rep.q1);
    w.key("q2").value(rep.q2);
    w.key("q3").value(rep.q3);
    w.key("samples_tested").value(rep.samples_tested);
    w.key("sb_members_found").value(rep.sampled_sb_members.size());
    double best = 0.0;
    for (const auto& s : rep.sampled_sb_members) best = std::max(best, s.margin);
    w.key("best_margin").value(best);
    w.key("verdict").value(verdict_name(rep.verdict));
    w.key("witness");
    if (wit)
        write_witness(w, *wit);
    else
        w.null();
    w.end_object();
}

inline void write_schmidt(JsonWriter& w, const SchmidtDecomposition& sd) {
    w.begin_object();
    w.key("rank").value(sd.rank);
    w.key("weights").begin_array();
    for (double x : sd.weights) w.value(x);
    w.end_array();
    w.key("a_ops").begin_array();
    for (const auto& a : sd.a_ops) write_matrix(w, a);
    w.end_array();
    w.key("b_ops").begin_array();
    for (const auto& b : sd.b_ops) write_matrix(w, b);
    w.end_array();
    w.end_object();
}

inline void write_tomography(JsonWriter& w, const TomographyVerdict& v,
                             const SigmaReconstruction* rec = nullptr) {
    w.begin_object();
    w.key("allows").value(v.allows);
    w.key("span_dim").value(v.span_dim);
    if (rec) {
        w.key("unique").value(rec->unique);
        w.key("reconstruction");
        if (rec->sigma) {
            write_matrix(w, *rec->sigma);
            w.key("residual").value(rec->residual);
        } else {
            w.null();
        }
    }
    w.end_object();
}

inline std::string analysis_to_json(const BipartiteUnitary& bu, const AnalysisResult& r) {
    JsonWriter w;
    w.begin_object();
    w.key("d_a").value(bu.d_a);
    w.key("d_b").value(bu.d_b);
    w.key("schmidt");
    write_schmidt(w, r.schmidt);
    w.key("identities").begin_object();
    w.key("completeness_residual").value(r.identities.completeness_residual);
    w.key("weight_sum_residual").value(r.identities.weight_sum_residual);
    w.key("ok").value(r.identities.ok);
    w.end_object();
    w.key("physicality");
    write_physicality(w, r.physicality, r.witness);
    w.key("tomography");
    write_tomography(w, r.tomography);
    w.end_object();
    return w.str();
}

inline std::string cp_verdict_to_json(const ChannelRep& ch) {
    JsonWriter w;
    w.begin_object();
    w.key("cp").value(ch.cp);
    w.key("tp").value(ch.tp);
    w.key("min_g_eig").value(ch.min_g_eig);
    w.key("min_choi_eig").value(ch.min_choi_eig);
    w.end_object();
    return w.str();
}

inline std::string gallery_entry_to_json(const GalleryEntry& e) {
    JsonWriter w;
    w.begin_object();
    w.key("name").value(e.name);
    w.key("d_a").value(e.unitary.d_a);
    w.key("d_b").value(e.unitary.d_b);
    w.key("u");
    write_matrix(w, e.unitary.u);
    w.key("expected").begin_object();
    w.key("rank").value(e.expected.rank);
    w.key("property_p").value(e.expected.property_p);
    w.key("allows_tomography").value(e.expected.allows_tomography);
    w.key("sb_members").begin_array();
    for (const auto& v : e.expected.sb_members) write_vector(w, v);
    w.end_array();
    w.key("sb_non_members").begin_array();
    for (const auto& v : e.expected.sb_non_members) write_vector(w, v);
    w.end_array();
    w.end_object();
    w.end_object();
    return w.str();
}

// ---------------------------------------------------------------------------
// Fiducial cache: {"d": n, "fiducial": [[re, im], ...]}.
// ---------------------------------------------------------------------------

inline std::string fiducial_cache_path(const std::string& dir, std::size_t d) {
    return dir + "/fiducial_d" + std::to_string(d) + ".json";
}

inline std::optional<CVector> load_fiducial(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error&) {
        return std::nullopt;
    }
    if (!j.is_object() || !j.contains("d") || !j.contains("fiducial")) return std::nullopt;
    CVector v = vector_from_json(j["fiducial"], "fiducial");
    if (v.size() != j["d"].get<std::size_t>()) return std::nullopt;
    return v;
}

inline void save_fiducial(const std::string& path, std::size_t d, const CVector& phi) {
    JsonWriter w;
    w.begin_object();
    w.key("d").value(d);
    w.key("fiducial");
    write_vector(w, phi);
    w.end_object();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fiducial cache: " + path);
    out << w.str() << "\n";
}

// Loads a cached fiducial when present and still valid, otherwise runs the
// search and caches the result.
inline std::optional<SicCandidate> load_or_find_fiducial(std::size_t d, const std::string& dir,
                                                         std::uint64_t seed) {
    const std::string path = fiducial_cache_path(dir, d);
    if (auto phi = load_fiducial(path)) {
        const double err = sic_overlap_check(*phi, d);
        if (err <= 1e-7) return SicCandidate{d, *phi, err};
    }
    auto found = find_sic_fiducial(d, seed);
    if (found) save_fiducial(path, d, found->fiducial);
    return found;
}

}  // namespace ancilla
