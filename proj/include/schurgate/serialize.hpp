#pragma once

#include <json.hpp>

#include "schurgate/characters.hpp"
#include "schurgate/euler.hpp"
#include "schurgate/frobenius.hpp"
#include "schurgate/predictions.hpp"
#include "schurgate/schur.hpp"

namespace schurgate {

// Keys keep insertion order so identical inputs give byte-identical output.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& x);
Json to_json(const CyclotomicNumber& x);  // {"conductor", "coeffs": ["num/den", ...]} dense over phi(m)
Json to_json(const AbelianField& F);
Json to_json(const MetacyclicGroup& G);
Json classes_json(const MetacyclicGroup& G);
Json to_json(const Provenance& prov);
Json to_json(const Character& chi, bool with_values = true);
Json to_json(const CharacterTable& table);
Json to_json(const LocalIndexReport& r);
Json to_json(const GlobalIndexReport& r);
Json to_json(const Statement& s);
Json to_json(const PredictionReport& r);
Json to_json(const FrobeniusDatum& d, const MetacyclicGroup& G);
Json to_json(const Series& s);
Json to_json(const EulerFactor& f);
Json to_json(const DirichletSeries& s);
Json to_json(const IdentityCheck& c);

// Inverses for the value types; malformed input raises InputError.
CyclotomicNumber cyclotomic_from_json(const Json& j);
AbelianField field_from_json(const Json& j);

}  // namespace schurgate
