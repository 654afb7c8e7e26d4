#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/convex_body.hpp"
#include "framelab/decay_profile.hpp"
#include "framelab/pointset.hpp"

namespace framelab {

// Declarative experiment description consumed by the `report` subcommand.
// Defaults: p = 2, delta = 1/1000, j0 = 4, Euclidean shells.
struct ExperimentConfig {
    struct BodySpec {
        std::string kind = "ball";
        int dim = 2;
        std::vector<double> semi_axes;  // size dim
        ConvexBody make() const;
    };

    struct PerturbSpec {
        double magnitude = 0.0;
        std::uint64_t seed = 0;
    };

    struct PointSetSpec {
        std::string generator;  // lattice | progression | bessel_zero | file
        // lattice
        double spacing = 1.0;
        double extent = 10.0;
        // progression
        double step = 0.5;
        double offset = 0.0;
        int count = 100;
        std::vector<double> direction;  // optional; defaults to e_1
        // file
        std::string path;
        std::optional<PerturbSpec> perturb;
        PointSet make(int dim) const;
    };

    struct AnalysisSpec {
        double p = 2.0;  // serialized as a number or the string "inf"
        double delta = 1e-3;
        int j0 = 4;
        ShellNorm shells = ShellNorm::euclidean;
    };

    struct OutputSpec {
        std::string csv;   // per-(pin, j) profile rows; empty = skip
        std::string json;  // combined report; empty = stdout
    };

    BodySpec body;
    PointSetSpec pointset;
    AnalysisSpec analysis;
    OutputSpec output;
    std::uint64_t seed = 0;
    double eigen_tol = 1e-10;
};

// Parses and validates a JSON config. Every violation is collected and
// reported at once, each prefixed with a JSON-pointer-style path; unknown
// keys are rejected. Throws parse_error.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

}  // namespace framelab
