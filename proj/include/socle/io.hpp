#pragma once

#include <map>
#include <string>

#include "socle/central.hpp"

#include <json.hpp>

namespace socle {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A loaded instance file: the algebra and any named elements it carries.
struct Instance {
    AlgebraPtr algebra;
    std::map<std::string, Element> elements;
};

/// Tolerances from SOCLE_TOL_RANK / SOCLE_TOL_CLUSTER / SOCLE_TOL_RESIDUAL,
/// falling back to the given base where unset.
Tolerance tolerance_from_env(Tolerance base = {});

Instance parse_instance(const nlohmann::json& j, const Tolerance& tol);
Instance load_instance(const std::string& path, const Tolerance& tol);

nlohmann::json instance_to_json(const Instance& inst);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json element_to_json(const Element& e);
Element element_from_json(const AlgebraPtr& alg, const nlohmann::json& j);

nlohmann::json cert_to_json(const CommutatorCert& cert);
nlohmann::json membership_to_json(const CommutatorMembership& mem);
nlohmann::json iso_to_json(const WedderburnIso& iso);
nlohmann::json spectral_data_to_json(const SpectralData& sd);
nlohmann::json ideal_cert_to_json(const IdealCert& cert);
nlohmann::json tensor_report_to_json(const TensorModelReport& rep);
nlohmann::json predicate_to_json(const PredicateResult& pr);
nlohmann::json equivalence_to_json(const EquivalenceReport& rep);

/// Seeded instance generator: a Blocks algebra, or (scrambled) the same
/// algebra re-presented by structure constants over a random conjugated
/// basis. Includes a seeded dense element "a" made per-block traceless
/// under the name "a0".
Instance gen_instance(const std::vector<std::size_t>& sizes, std::uint64_t seed, bool scramble,
                      const Tolerance& tol);

}  // namespace socle
