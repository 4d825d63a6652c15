#pragma once

// Generalized eigenanalysis of the pencil (A, E): mode computation and
// classification, eigenvector normalization, participation factors, and
// eigenvalue sensitivities.

#include <vector>

#include "dss/model.hpp"

namespace dss {

/// Finite modes are ordinary eigenvalues of the pencil; virtual modes sit at
/// infinity and stem from the rank deficiency of E.
enum class ModeClass { Finite, Virtual };

/// Result of a dense generalized eigensolve. Mode i owns eigenvalues[i],
/// right vector right.col(i) and left row vector left.row(i), which
/// satisfies psi * A = lambda * psi * E. Modes are sorted canonically:
/// finite by (real, imag) ascending, then virtual.
struct ModeSet {
    std::vector<Complex> eigenvalues;  ///< meaningless (infinite) for virtual modes
    CMat right;                        ///< n x k, columns phi_i
    CMat left;                         ///< k x n, rows psi_i
    std::vector<ModeClass> classification;
    std::vector<bool> defective;  ///< set by normalize(); finite modes with psi*E*phi ~ 0
    bool normalized = false;

    Index size() const { return static_cast<Index>(eigenvalues.size()); }
    Index finite_count() const;
};

struct ParticipationEntry {
    StateLabel state;
    Complex raw;       ///< psi_ik * phi_ki
    Complex weighted;  ///< psi_ik * E_kk * phi_ki; sums to 1 over k
};

/// Participation of every state in one finite mode, sorted by |weighted|
/// descending.
struct ModeParticipation {
    Index mode_index = 0;  ///< index into the originating ModeSet
    Complex lambda;
    double freq_hz = 0.0;  ///< imag(lambda) / 2*pi
    double damping = 0.0;  ///< real(lambda)
    std::vector<ParticipationEntry> entries;
};

/// Finite, non-defective modes only; virtual modes have no participation.
struct ParticipationReport {
    std::vector<ModeParticipation> modes;
};

/// Dense generalized eigensolve of A*phi = lambda*E*phi. Eigenvalues whose
/// beta in the (alpha, beta) pair vanishes below tolerance are classified
/// virtual. Vectors come back unnormalized.
ModeSet generalized_eig(const DssModel& model);

/// Scale each finite mode's left vector so psi * E * phi = 1. A finite mode
/// with |psi * E * phi| below tolerance is marked defective (repeated or
/// defective eigenvalue) and left unscaled; virtual modes are untouched.
ModeSet normalize(const ModeSet& modes, const DssModel& model);

/// Participation factors p_ki = psi_ik * phi_ki and their E-weighted form
/// for every finite normalized mode. Defective modes are excluded.
ParticipationReport participation(const DssModel& model, const ModeSet& modes);

/// d(lambda_i)/d(a_kj) = psi_ik * phi_ji for normalized finite mode i.
/// Throws VirtualModeRequested for a virtual or out-of-range index and
/// DefectiveMode when the mode could not be normalized.
Complex eig_sensitivity(const DssModel& model, const ModeSet& modes,
                        Index i, Index k, Index j);

} // namespace dss
