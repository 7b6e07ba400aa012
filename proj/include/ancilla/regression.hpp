#pragma once

#include <string>
#include <vector>

#include "ancilla/analysis.hpp"
#include "ancilla/gallery.hpp"
#include "ancilla/opspace.hpp"

namespace ancilla {

struct RegressionCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every standard gallery entry through the analysis stack and compares
// against its expected facts.
inline std::vector<RegressionCheck> run_gallery_regression(int samples = 200,
                                                           std::uint64_t seed = 42,
                                                           const Tolerances& tol = {}) {
    std::vector<RegressionCheck> checks;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back(RegressionCheck{name, pass, detail});
    };

    for (const GalleryEntry& e : standard_gallery()) {
        const AnalysisResult r = full_analysis(e.unitary, samples, seed, tol);

        add(e.name + ": schmidt rank", r.schmidt.rank == e.expected.rank,
            "computed " + std::to_string(r.schmidt.rank) + ", expected " +
                std::to_string(e.expected.rank));
        add(e.name + ": unitarity identities", r.identities.ok);

        const bool p_claim = r.physicality.verdict == Verdict::P ||
                             r.physicality.verdict == Verdict::PEmpirical;
        add(e.name + ": property P", p_claim == e.expected.property_p,
            "verdict " + verdict_name(r.physicality.verdict));

        add(e.name + ": tomography", r.tomography.allows == e.expected.allows_tomography,
            "span dim " + std::to_string(r.tomography.span_dim));

        bool members_ok = true;
        for (const auto& phi : e.expected.sb_members)
            members_ok = members_ok && !rank_one_in_cone(r.schmidt, phi, tol).in_cone;
        add(e.name + ": known S_B members", members_ok);

        bool non_members_ok = true;
        for (const auto& phi : e.expected.sb_non_members)
            non_members_ok = non_members_ok && rank_one_in_cone(r.schmidt, phi, tol).in_cone;
        add(e.name + ": known S_B non-members", non_members_ok);

        if (!e.expected.property_p) {
            const bool w_ok = r.witness.has_value() &&
                              r.witness->cp_certificate >= -tol.psd_tol &&
                              r.witness->epsilon > 0.0;
            add(e.name + ": ancilla witness", w_ok);
        }
    }
    return checks;
}

}  // namespace ancilla
