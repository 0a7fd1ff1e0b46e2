#pragma once

#include <map>
#include <optional>

#include "simpi/berger.hpp"
#include "simpi/subdivide.hpp"

namespace simpi {

// input outside the implemented scope, e.g. d >= 3 without (d-1)-connectivity
struct ScopeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineInput {
    std::shared_ptr<const SimplicialSet> set;  // X; for a complex, X^ss / T
    std::optional<LoopContraction> c0;
    std::shared_ptr<const TreeTarget> complex;  // present for complex inputs
};

PipelineInput input_from_set(std::shared_ptr<const SimplicialSet> x, std::optional<LoopContraction> c0 = {});
// validates the certificate into a loop contraction
PipelineInput input_from_complex(const Complex& k, const ComplexCertificate& cert);

struct Verdict {
    bool pass = false;
    int multiplier = 0;  // +1 or -1 when the image is homologous to +-z
};

// signed image of the sphere against z in H_d(X)
Verdict verify(const SphereMap& s, std::shared_ptr<const SimplicialSet> x, const Chain& z, int d);

struct PipelineOptions {
    bool lift = true;        // subdivide-lift for complex inputs
    bool keep_lifts = false;  // store the explicit subdivided maps; small spheres only
};

struct GeneratorReport {
    Chain cycle;  // homology generator z
    Int word_length = 0;
    size_t path_length = 0;
    size_t sphere_tops = 0;   // nondegenerate d-simplices of the sphere
    size_t sphere_cells = 0;  // all nondegenerate simplices
    Chain image;
    Verdict verdict;
    SphereAudit audit;
    std::map<std::string, double> seconds;  // per stage
    std::optional<LiftAudit> lift;
    int esd_parts = 0;
};

struct PipelineResult {
    int dim = 0;
    std::vector<SphereMap> spheres;
    std::vector<GeneratorReport> reports;
    std::vector<LiftedMap> lifts;
    std::vector<Complexified> lift_sources;

    bool ok() const;
};

// (d-1)-connectivity gate; throws ScopeError, HurewiczError or CertificateError
void check_scope(const PipelineInput& in, int d);

PipelineResult run_pipeline(const PipelineInput& in, int d, const PipelineOptions& opt = {});

// Sigma = complexified sphere with f = (sphere map) o gamma
struct SphereLift {
    Complexified source;
    SimplicialMap map;
};
SphereLift sphere_lift_source(const SphereMap& s);

struct BlowupRow {
    int k = 0;
    size_t input_size = 0;
    size_t sphere_tops = 0;
    double seconds = 0;
    bool pass = false;
};

// run_pipeline on X_k(2, k) for k = 1..kmax
std::vector<BlowupRow> bench_blowup(int kmax);

}  // namespace simpi
