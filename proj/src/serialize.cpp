#include "schurgate/serialize.hpp"

#include <algorithm>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

Json to_json(const Rational& x) { return x.str(); }

Json to_json(const CyclotomicNumber& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(c.str());
    return Json{{"conductor", x.conductor()}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const AbelianField& F) { return Json{{"conductor", F.conductor()}, {"stabilizer", F.stabilizer()}}; }

Json to_json(const MetacyclicGroup& G) {
    return Json{{"q", G.q()}, {"p", G.p()}, {"n", G.n()}, {"j", G.j()}, {"r", G.r()}};
}

Json classes_json(const MetacyclicGroup& G) {
    Json out = Json::array();
    for (const auto& c : G.classes())
        out.push_back(Json{{"rep", {c.rep.x, c.rep.y}}, {"size", c.size}, {"order", c.order}});
    return out;
}

Json to_json(const Provenance& prov) {
    Json out{{"kind", to_string(prov.kind)}};
    switch (prov.kind) {
        case Provenance::Kind::OneDimensional: out["exponent"] = prov.exponent; break;
        case Provenance::Kind::LiftedFromQuotient: out["level"] = prov.level; [[fallthrough]];
        case Provenance::Kind::Induced: out["psi"] = Json{{"u", prov.psi.u}, {"w", prov.psi.w}}; break;
        default:
            if (!prov.label.empty()) out["label"] = prov.label;
    }
    return out;
}

Json to_json(const Character& chi, bool with_values) {
    Json out{{"id", chi.id()}, {"degree", chi.degree()}, {"provenance", to_json(chi.provenance())}};
    if (with_values) {
        Json values = Json::array();
        for (const auto& v : chi.values()) values.push_back(to_json(v));
        out["values"] = std::move(values);
    }
    return out;
}

Json to_json(const CharacterTable& table) {
    const auto& G = *table.group;
    Json rows = Json::array();
    std::size_t faithful = 0;
    for (const auto& chi : table.characters) {
        Json row = to_json(chi);
        const bool f = is_faithful(chi);
        faithful += f;
        row["faithful"] = f;
        row["field"] = to_json(character_field(chi));
        if (f) {
            auto td = tensor_decompose(chi);
            row["tensor"] = Json{{"tau_r", td.tau_r.id()}, {"tau_r_provenance", to_json(td.tau_r.provenance())},
                                 {"chi_exponent", td.chi_exponent}};
        }
        rows.push_back(std::move(row));
    }
    return Json{{"group", to_json(G)},
                {"order", G.order()},
                {"classes", classes_json(G)},
                {"characters", std::move(rows)},
                {"count", table.characters.size()},
                {"faithful_count", faithful}};
}

Json to_json(const LocalIndexReport& r) {
    Json out{{"place", r.place.str()}, {"index", r.index}, {"reason", to_string(r.reason)}};
    if (r.details) {
        const auto& d = *r.details;
        out["details"] = Json{{"d", d.d},
                              {"f", d.f},
                              {"N", d.N ? Json(*d.N) : Json(nullptr)},
                              {"N_valuation", d.N_valuation},
                              {"e", d.e}};
    }
    if (r.derived_beyond_paper) out["exact_beyond_divisibility_bound"] = true;
    return out;
}

Json to_json(const GlobalIndexReport& r) {
    Json local = Json::array();
    for (const auto& l : r.local) local.push_back(to_json(l));
    return Json{{"group", r.group},
                {"character", r.character},
                {"local", std::move(local)},
                {"global", r.global},
                {"divides_dimension", r.divides_dimension},
                {"shortcut_trivial", r.shortcut_trivial}};
}

Json to_json(const Statement& s) {
    Json out{{"key", s.key}, {"claim", s.claim}, {"assuming", s.assuming}};
    if (s.modulus) out["modulus"] = *s.modulus;
    return out;
}

Json to_json(const PredictionReport& r) {
    std::vector<std::string> assuming;
    Json statements = Json::array();
    for (const auto& s : r.statements) {
        statements.push_back(to_json(s));
        for (const auto& a : s.assuming)
            if (std::find(assuming.begin(), assuming.end(), a) == assuming.end()) assuming.push_back(a);
    }
    return Json{{"assuming", assuming},
                {"group", r.group},
                {"character", r.character},
                {"q", r.q},
                {"p", r.p},
                {"n", r.n},
                {"r", r.r},
                {"schur_modulus", r.schur_modulus},
                {"forced", r.forced},
                {"tower_modulus", r.tower_modulus},
                {"faithful_count", r.faithful_count},
                {"identity_exponent", r.identity_exponent},
                {"identity_modulus", r.identity_modulus},
                {"psi_order", r.psi_order},
                {"statements", std::move(statements)},
                {"notes", r.notes}};
}

Json to_json(const FrobeniusDatum& d, const MetacyclicGroup& G) {
    Json cands = Json::array();
    for (auto c : d.candidates) {
        const auto& rep = G.classes().at(c).rep;
        cands.push_back(Json{{"class", c}, {"rep", {rep.x, rep.y}}});
    }
    return Json{{"v", d.v},
                {"order", d.order_in_G},
                {"cyclotomic_component", d.cyclotomic_component},
                {"pattern", d.pattern},
                {"class", d.cls ? Json(*d.cls) : Json(nullptr)},
                {"ambiguous", d.ambiguous()},
                {"candidates", std::move(cands)}};
}

Json to_json(const Series& s) {
    Json out = Json::array();
    for (const auto& c : s) out.push_back(to_json(c));
    return out;
}

Json to_json(const EulerFactor& f) { return Json{{"v", f.v}, {"poly", to_json(f.poly)}}; }

Json to_json(const DirichletSeries& s) { return Json{{"X", s.X}, {"an", to_json(s.an)}}; }

Json to_json(const IdentityCheck& c) {
    return Json{{"X", c.X},
                {"multiplicity", c.multiplicity},
                {"holds", c.holds},
                {"first_mismatch", c.first_mismatch ? Json(*c.first_mismatch) : Json(nullptr)},
                {"good_primes", c.good_primes},
                {"ambiguous_primes", c.ambiguous_primes}};
}

namespace {

std::uint64_t positive(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() <= 0)
        throw InputError(std::string("expected positive integer field '") + key + "'");
    return j[key].get<std::uint64_t>();
}

}  // namespace

CyclotomicNumber cyclotomic_from_json(const Json& j) {
    const std::uint64_t m = positive(j, "conductor");
    if (m > max_conductor()) throw ConductorOverflow("conductor " + std::to_string(m) + " exceeds the cap");
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw InputError("expected array field 'coeffs'");
    const auto& arr = j["coeffs"];
    if (arr.size() != nt::euler_phi(m))
        throw InputError("expected " + std::to_string(nt::euler_phi(m)) + " coefficients for conductor " + std::to_string(m));
    std::vector<Rational> coeffs;
    coeffs.reserve(arr.size());
    for (const auto& c : arr) {
        if (!c.is_string()) throw InputError("coefficients must be strings \"num/den\"");
        coeffs.push_back(Rational::parse(c.get<std::string>()));
    }
    return CyclotomicNumber::from_coeffs(m, coeffs);
}

AbelianField field_from_json(const Json& j) {
    const std::uint64_t m = positive(j, "conductor");
    if (!j.contains("stabilizer") || !j["stabilizer"].is_array()) throw InputError("expected array field 'stabilizer'");
    std::vector<std::uint64_t> stab;
    for (const auto& k : j["stabilizer"]) {
        if (!k.is_number_integer() || k.get<std::int64_t>() < 0) throw InputError("stabilizer entries must be non-negative integers");
        stab.push_back(k.get<std::uint64_t>());
    }
    return AbelianField(m, std::move(stab));
}

}  // namespace schurgate
