#pragma once

#include <optional>

#include "ancilla/physicality.hpp"
#include "ancilla/schmidt.hpp"
#include "ancilla/tomography.hpp"

namespace ancilla {

// End-to-end analysis of one bipartite unitary.
struct AnalysisResult {
    SchmidtDecomposition schmidt;
    UnitarityIdentities identities;
    PhysicalityReport physicality;
    std::optional<AncillaWitness> witness;
    TomographyVerdict tomography;
};

inline AnalysisResult full_analysis(const BipartiteUnitary& bu, int samples = 500,
                                    std::uint64_t seed = 42, const Tolerances& tol = {}) {
    AnalysisResult r;
    r.schmidt = schmidt_decompose(bu, tol);
    r.identities = verify_unitarity_identities(r.schmidt);
    r.physicality = decide_physicality(r.schmidt, samples, seed, tol);
    if (r.physicality.verdict == Verdict::NotP)
        r.witness = best_witness(r.schmidt, r.physicality, tol);
    r.tomography = allows_indirect_tomography(r.schmidt, tol);
    return r;
}

}  // namespace ancilla
