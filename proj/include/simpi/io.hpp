#pragma once

#include <json.hpp>

#include "simpi/pipeline.hpp"

namespace simpi {

using Json = nlohmann::ordered_json;

// malformed or inconsistent input document
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a nondegenerate simplex as its name, a degenerate one as {"deg": [...], "base": name}
Json simplex_to_json(const SimplicialSet& x, const Simplex& s);
Simplex simplex_from_json(const SimplicialSet& x, const Json& j);

Json sset_to_json(const SimplicialSet& x);
std::shared_ptr<SimplicialSet> sset_from_json(const Json& j);

Json complex_to_json(const Complex& k);
Complex complex_from_json(const Json& j);

// list of {"simplex", "coeff"} with decimal coefficients
Json chain_to_json(const SimplicialSet& x, const Chain& c);
Chain chain_from_json(const SimplicialSet& x, const Json& j);

// edges keyed "u.v"
Json certificate_to_json(const ComplexCertificate& c);
ComplexCertificate certificate_from_json(const Json& j);

// words as lists of {"gen", "exp"}; keyed by edge name
Json word_to_json(const SimplicialSet& x, const GroupWord& w);
GroupWord word_from_json(const SimplicialSet& x, const Json& j);
Json contraction_to_json(const SimplicialSet& x, const LoopContraction& c);
LoopContraction contraction_from_json(const SimplicialSet& x, const Json& j);

// {"sphere", "assignment", "signs"}; signs keyed by top simplex
Json sphere_to_json(const SphereMap& s);
SphereMap sphere_from_json(const Json& j, std::shared_ptr<const SimplicialSet> target);

// {"complex": ..., "certificate": ...} or {"sset": ..., "c0": ...}
struct InputDocument {
    std::optional<Complex> complex;
    std::optional<ComplexCertificate> certificate;
    std::shared_ptr<SimplicialSet> set;  // the set itself, or from_complex of the complex
    std::optional<LoopContraction> c0;
};
InputDocument input_from_json(const Json& j);
Json input_to_json(const InputDocument& doc);
// for a complex the pipeline runs on X^ss / T and needs the certificate
PipelineInput pipeline_input(const InputDocument& doc);

Json report_to_json(const PipelineResult& r, const SimplicialSet& x);

// Esd_k(sigma) with the label of each vertex; labels omitted when empty
Json esd_to_json(const EsdComplex& e, const std::vector<int>& labels);
// surface geometry of Esd_k(sigma) with sigma's vertices on the moment curve; d <= 3
std::string esd_to_off(const EsdComplex& e);

}  // namespace simpi
