#pragma once

// Inner-anodyne certificates: sequences of inner-horn cell attachments
// inside a representable, their verification, the inductive construction
// for unions of faces, and a bounded search starting from the spine.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetacat/subshapes.hpp"

namespace thetacat {

/// Attaches the cell c: C -> A along the inner horn Λ^{k:m} ⊂ y(C).
struct AnodyneStep {
    Shape cell;
    MorphismClass attach;
    int k = 1;
    int m = 1;
};

struct AnodyneCertificate {
    Shape base;
    std::string start_label; // "spine" or "gamma:[[k,m],...]"
    std::string end_label;   // "full" or "outer"
    SubOfRepresentable start;
    SubOfRepresentable end;
    std::vector<AnodyneStep> steps;
};

struct CertificateReport {
    bool passed = true;
    /// First failing step; steps.size() when the final union differs from end.
    std::optional<std::size_t> step;
    std::string reason;
    /// An offending cell; its source is the offending level.
    std::optional<MorphismClass> cell;
    /// Cells added by each step across the window.
    std::vector<std::size_t> added;
};

/// Replays the steps from start, checking at each step that the horn index
/// is valid and inner, that c is nondegenerate, that im(c) is not already
/// present and that the pullback of the current subpresheaf along c is
/// exactly the horn. Finally checks that the result equals end.
CertificateReport verify_certificate(const AnodyneCertificate& cert, const WindowSpec& w);

struct CertifyStats {
    std::size_t pivots_tried = 0;
    /// Pivots whose intersections F ∩ B were not each a union of faces of B,
    /// accepted because their union was.
    std::size_t union_fallbacks = 0;
};

/// Builds a certificate for ⋃Γ ⊂ y(A), Γ a proper set of faces containing
/// every outer face, by induction on the missing inner faces. Throws
/// InvalidArgument when Γ is not admissible and ProofShapeViolation when no
/// missing face has intersections of the expected shape.
AnodyneCertificate certify_union_inclusion(const Shape& a, const std::vector<FaceDescriptor>& gamma,
                                           const WindowSpec& w, CertifyStats* stats = nullptr);

/// Admissible Γ for a: outer faces plus a proper subset of the inner faces,
/// ordered by the inner subset as a bitmask.
std::vector<std::vector<FaceDescriptor>> admissible_gammas(const Shape& a);

enum class ProbeTarget { Outer, Full };

struct ProbeStats {
    std::uint64_t nodes = 0;
    std::size_t distinct_states = 0;
    std::size_t dead_ends = 0;
    std::size_t max_depth = 0;
    /// Largest number of nondegenerate cells reached.
    std::size_t best_cells = 0;
    std::size_t target_cells = 0;
};

struct ProbeResult {
    bool found = false;
    bool budget_exceeded = false;
    std::optional<AnodyneCertificate> certificate;
    ProbeStats stats;
};

inline constexpr std::uint64_t kDefaultProbeBudget = 1'000'000;

/// Depth-first search over inner-horn attachments from spine(A) to either
/// spine(A) ∪ (outer faces) or y(A). Candidates are tried in order of
/// (dim, entry sum) of the cell, then class order, so the certificate found
/// is the first one in that order. Exhaustion is not a refutation.
ProbeResult spine_probe(const Shape& a, ProbeTarget target, const WindowSpec& w,
                        std::uint64_t budget = kDefaultProbeBudget);
/// Serial reference implementation of spine_probe.
ProbeResult spine_probe_serial(const Shape& a, ProbeTarget target, const WindowSpec& w,
                               std::uint64_t budget = kDefaultProbeBudget);

std::string to_string(ProbeTarget t);
ProbeTarget parse_probe_target(const std::string& text);

/// "gamma:[[k,m],...]" in the given order.
std::string gamma_label(const std::vector<FaceDescriptor>& gamma);

} // namespace thetacat
