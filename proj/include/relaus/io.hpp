#pragma once
#include <json.hpp>

#include <string>
#include <vector>

#include "relaus/decompose.hpp"
#include "relaus/recollement.hpp"
#include "relaus/tilting.hpp"

namespace relaus {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "relaus";
inline constexpr const char* kToolVersion = "0.1.0";

// strict "-3/4" form; reduced into the field
Scalar parse_rational(const std::string& s, const FieldSpec& f,
                      const std::string& where);
std::string rational_str(const Scalar& s);

std::string read_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& what);

Json algebra_to_json(const AlgebraPresentation& p);
AlgebraPresentation algebra_from_json(const Json& j);
AlgPtr load_algebra_text(const std::string& text);
AlgPtr load_algebra_file(const std::string& path);

// modules travel in quiver coordinates: a space per vertex, a matrix per
// arrow; export canonicalizes so that export then import is the identity
Json module_to_json(const ModPtr& m);
ModPtr module_from_json(const Json& j, const AlgPtr& a);
ModPtr load_module_file(const std::string& path, const AlgPtr& a);

Json catalog_to_json(const AlgPtr& a, const Catalog& c);
Catalog catalog_from_json(const Json& j, const AlgPtr& a);

Json json_of(const DimBound& d);
Json json_of(const Hypothesis& h);
Json json_of(const DimWitness& w);
Json json_of(const MoritaInvariants& mi);
Json json_of(const GorensteinResult& g);
Json setup_to_json(const SubcategorySetup& s);
Json zeta_to_json(const ZetaPackage& z);
Json tilting_to_json(const TiltingReport& r);
Json ttf_to_json(const TTFReport& r);
Json gprj_to_json(const GprjReport& r);

// human summary of an assembled certificate
std::string certificate_markdown(const Json& cert);

}  // namespace relaus
