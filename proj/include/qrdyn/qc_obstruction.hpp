#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrdyn/core_map.hpp"
#include "qrdyn/fixed_rays.hpp"

namespace qrdyn {

enum class Verdict { Obstructed, Inconclusive };
enum class Reason { RayCountMismatch, TraceMismatch, CorollaryFixedTheta };

std::string to_string(Verdict v);
std::string to_string(Reason r);

/// A ray in the pairing order: angles descending, in the frame where theta >= 0.
struct PairedRay {
    int label;  ///< 1, 0, 2 for three rays; 1, 2 for two; 0 for one
    double angle;
    double trace_sq;
    Stability stability;
};

struct MapSummary {
    MapParams params;
    Regime regime;
    std::optional<double> k_theta;
    std::vector<PairedRay> rays;
    bool near_bifurcation;
};

struct ObstructionVerdict {
    Verdict verdict;
    std::vector<Reason> reasons;          ///< first entry is the primary reason
    std::vector<int> mismatched_labels;   ///< rays whose traces differ
    MapSummary first;
    MapSummary second;
    std::vector<std::string> diagnostics;
};

/// Reports only obstructions to quasiconformal equivalence near infinity; never equivalence.
/// Traces are compared with relative tolerance tol.
ObstructionVerdict obstruction_report(const MapParams& p1, const MapParams& p2,
                                      double tol = 1e-8);

}  // namespace qrdyn
