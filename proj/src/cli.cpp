#include "schurgate/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "schurgate/elliptic.hpp"
#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"
#include "schurgate/polymod.hpp"
#include "schurgate/serialize.hpp"
#include "schurgate/sweep.hpp"

namespace schurgate {

namespace {

using u64 = std::uint64_t;

struct GroupArgs {
    u64 q = 0, p = 0, j = 0;
    unsigned n = 0, r = 0;
};

void add_group_options(CLI::App* sub, GroupArgs& g, bool required) {
    auto* q = sub->add_option("-q", g.q, "prime q");
    auto* p = sub->add_option("-p", g.p, "odd prime p with p | q - 1");
    auto* n = sub->add_option("-n", g.n, "exponent n, the group is C_q x| C_{p^n}");
    if (required) {
        q->required();
        p->required();
        n->required();
    }
    sub->add_option("-j", g.j, "action b a b^-1 = a^j (default: canonical j for r)");
    sub->add_option("-r", g.r, "ord_q(j) = p^r when j is omitted (default: largest admissible)");
}

GroupPtr resolve_group(const GroupArgs& g) {
    if (g.q == 0 || g.p == 0 || g.n == 0) throw InputError("group needs -q, -p and -n");
    if (g.j != 0) return make_group(g.q, g.p, g.n, g.j);
    if (!nt::is_prime(g.q) || !nt::is_prime(g.p)) throw InputError("p and q must be primes");
    unsigned r = g.r;
    if (r == 0) r = std::min(g.n, nt::valuation(g.q - 1, g.p));
    if (r == 0) throw InputError("p does not divide q - 1: every such group is abelian");
    if (r > g.n) throw InputError("r must not exceed n");
    return make_group(g.q, g.p, g.n, MetacyclicGroup::canonical(g.q, g.p, g.n, r).j());
}

std::string field_str(const AbelianField& F) {
    if (F.conductor() == 1) return "Q";
    std::string s = "Q(zeta_" + std::to_string(F.conductor()) + ")";
    if (F.stabilizer().size() <= 1) return s;
    s += "^<";
    for (std::size_t i = 0; i < F.stabilizer().size(); ++i) s += (i ? "," : "") + std::to_string(F.stabilizer()[i]);
    return s + ">";
}

std::string rep_str(const GroupElement& g) { return "[" + std::to_string(g.x) + "," + std::to_string(g.y) + "]"; }

const Character& pick_character(const CharacterTable& T, const std::string& id) {
    if (id.empty()) {
        for (const auto& chi : T.characters)
            if (is_faithful(chi)) return chi;
        throw InvariantViolation("no faithful irreducible");
    }
    for (const auto& chi : T.characters)
        if (chi.id() == id) return chi;
    throw InputError("no irreducible character with id '" + id + "' (see the table subcommand)");
}

// Class of a^x with x in H ("H") or outside it ("nonH").
std::size_t order_q_class(const MetacyclicGroup& G, const std::string& which) {
    if (which == "H") return G.class_index({1, 0});
    if (which == "nonH") {
        for (u64 x = 2; x < G.q(); ++x)
            if (!std::binary_search(G.H().begin(), G.H().end(), x)) return G.class_index({x, 0});
        throw InputError("H is all of (Z/q)^x: there is no class outside H");
    }
    throw InputError("--order-q-class must be H or nonH");
}

std::size_t checked_class(const MetacyclicGroup& G, long cls) {
    if (cls < 0 || static_cast<std::size_t>(cls) >= G.classes().size())
        throw InputError("class index out of range (0.." + std::to_string(G.classes().size() - 1) + ")");
    return static_cast<std::size_t>(cls);
}

std::string table_text(const CharacterTable& T, const Json& j) {
    std::ostringstream os;
    const auto& G = *T.group;
    os << group_label(G) << "  order " << G.order() << ", " << G.classes().size() << " classes\n";
    os << "classes:";
    for (std::size_t c = 0; c < G.classes().size(); ++c) {
        const auto& cl = G.classes()[c];
        os << (c % 6 == 0 ? "\n  " : "  ") << c << ":" << rep_str(cl.rep) << " size " << cl.size << " ord " << cl.order;
    }
    os << "\n";
    const auto& rows = j["characters"];
    for (std::size_t i = 0; i < T.characters.size(); ++i) {
        const auto& chi = T.characters[i];
        const auto& row = rows[i];
        os << chi.id() << "  deg " << chi.degree() << "  " << to_string(chi.provenance().kind)
           << (row["faithful"].get<bool>() ? "  faithful" : "") << "  field "
           << field_str(field_from_json(row["field"]));
        if (row.contains("tensor"))
            os << "  = " << row["tensor"]["tau_r"].get<std::string>() << " (x) chi_"
               << row["tensor"]["chi_exponent"].get<u64>();
        os << "\n   ";
        for (const auto& v : chi.values()) os << " " << v.to_string();
        os << "\n";
    }
    os << j["count"].get<std::size_t>() << " characters, " << j["faithful_count"].get<std::size_t>() << " faithful\n";
    return os.str();
}

std::string index_text(const GlobalIndexReport& r) {
    std::ostringstream os;
    os << r.group << "  " << r.character << ": global Schur index " << r.global << "\n";
    for (const auto& l : r.local) os << "  place " << l.place.str() << ": " << l.index << " (" << to_string(l.reason) << ")\n";
    return os.str();
}

std::string predict_text(const PredictionReport& r) {
    std::ostringstream os;
    os << r.group << "  " << r.character << "\n";
    if (!r.forced) {
        os << "no forced divisibility (p^n | q-1)\n";
    } else {
        os << "per-character modulus (Schur index): " << r.schur_modulus << "\n";
        os << "tower modulus: " << r.tower_modulus << "\n";
        os << "identity modulus: " << r.identity_modulus << " = " << r.identity_exponent << " x " << r.faithful_count
           << " x " << r.schur_modulus << "\n";
    }
    for (const auto& s : r.statements) {
        os << "  [assuming";
        for (const auto& a : s.assuming) os << " " << a;
        os << "] " << s.claim << "\n";
    }
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    return os.str();
}

Json params_json(const MetacyclicParams& P) {
    return Json{{"q", P.q}, {"p", P.p}, {"n", P.n}, {"j", P.j}, {"r", P.r}};
}

Json record_json(const SweepRecord& r) {
    const auto& c = r.certificate;
    return Json{{"group", params_json(r.params)},
                {"label", r.label},
                {"classes", r.classes},
                {"faithful", r.faithful},
                {"faithful_formula", r.faithful_formula},
                {"schur_index", r.schur_index},
                {"index_rule", r.index_rule},
                {"table", Json{{"certified", c.ok()},
                               {"row_orbits", c.row_orbits},
                               {"class_orbits", c.class_orbits}}},
                {"mackey", r.mackey},
                {"fields", r.fields},
                {"tensors", r.tensors},
                {"divisibility", r.divisibility},
                {"failures", r.failures}};
}

struct Output {
    Json json;
    std::string text;
    int code = kExitOk;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Characters, Schur indices and twisted Euler factors of C_q x| C_{p^n}", "schurgate"};
    std::string format = "text", out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "write the report to this file instead of stdout");
    app.require_subcommand(1);

    GroupArgs g;
    std::string curve, field = "example-F1", character;
    u64 v = 0, v_max = 0, X = 500, max_order = 10000;
    long cls = -1;
    std::string order_class;
    bool all = false, trivial = false, symbolic = false, every_j = false, index_only = false;

    auto* table = app.add_subcommand("table", "character table with faithfulness, fields and tensor decompositions");
    add_group_options(table, g, true);

    auto* schur = app.add_subcommand("schur", "local and global Schur indices of a faithful irreducible");
    add_group_options(schur, g, true);
    schur->add_flag("--all", all, "report every faithful irreducible");
    schur->add_option("--character", character, "character id (default: first faithful)");

    auto* predict = app.add_subcommand("predict", "conditional divisibility predictions");
    add_group_options(predict, g, true);
    predict->add_option("--character", character, "character id (default: first faithful)");

    auto* frob = app.add_subcommand("frobenius", "Frobenius classes in the Galois group of the tower");
    add_group_options(frob, g, false);
    frob->add_option("--field", field, "degree-q polynomial, leading coefficient first, or example-F1");
    frob->add_option("-v", v, "a single prime");
    frob->add_option("--v-max", v_max, "every prime up to this bound");

    auto* euler = app.add_subcommand("euler", "twisted Euler factor det(1 - Frob_v T | H^1(E) (x) rho)");
    add_group_options(euler, g, false);
    euler->add_option("--curve", curve, "a1,a2,a3,a4,a6");
    euler->add_option("-v", v, "good prime");
    euler->add_flag("--trivial", trivial, "untwisted factor");
    euler->add_flag("--symbolic", symbolic, "factor with a_v and v left symbolic");
    euler->add_option("--character", character, "character id (default: first faithful)");
    euler->add_option("--class", cls, "conjugacy class index");
    euler->add_option("--order-q-class,--order7-class", order_class, "H or nonH: class of a^x with x in H or not");
    euler->add_option("--field", field, "field polynomial, used to find Frob_v when no class is given");

    auto* series = app.add_subcommand("series", "Dirichlet coefficients of L(E, rho, s) up to X");
    add_group_options(series, g, false);
    series->add_option("--curve", curve, "a1,a2,a3,a4,a6")->required();
    series->add_option("--field", field, "field polynomial or example-F1");
    series->add_option("-X", X, "coefficient bound");
    series->add_flag("--trivial", trivial, "untwisted L(E, s)");
    series->add_option("--character", character, "character id (default: first faithful)");

    auto* identity = app.add_subcommand("identity", "quotient identity as characters and as Dirichlet series");
    add_group_options(identity, g, false);
    identity->add_option("--curve", curve, "a1,a2,a3,a4,a6")->required();
    identity->add_option("--field", field, "field polynomial or example-F1");
    identity->add_option("-X", X, "coefficient bound");

    auto* sweep = app.add_subcommand("sweep", "check every group with q p^n up to a bound");
    sweep->add_option("--max-order", max_order, "bound on q p^n");
    sweep->add_flag("--every-j", every_j, "every admissible j rather than one per r");
    sweep->add_flag("--index-only", index_only, "only the Schur index rule and faithful counts");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    Output result;
    try {
        auto field_group = [&]() {
            IntPoly f = IntPoly::parse(field);
            GroupArgs fg = g;
            if (fg.q == 0) fg.q = static_cast<u64>(f.degree());
            if (fg.p == 0) fg.p = 3;
            if (fg.n == 0) fg.n = 1;
            if (fg.q != static_cast<u64>(f.degree())) throw InputError("the field polynomial must have degree q");
            return std::pair{f, resolve_group(fg)};
        };
        auto need_curve = [&]() {
            if (curve.empty()) throw InputError("--curve is required");
            return EllipticCurve::parse(curve);
        };

        if (*table) {
            auto G = resolve_group(g);
            auto T = irreducible_characters(G);
            result.json = to_json(T);
            result.text = table_text(T, result.json);
        } else if (*schur) {
            auto G = resolve_group(g);
            auto T = irreducible_characters(G);
            if (all) {
                result.json = Json::array();
                for (const auto& tau : faithful_characters(T)) {
                    auto rep = global_index(tau);
                    result.json.push_back(to_json(rep));
                    result.text += index_text(rep);
                }
            } else {
                auto rep = global_index(pick_character(T, character));
                result.json = to_json(rep);
                result.text = index_text(rep);
            }
        } else if (*predict) {
            auto G = resolve_group(g);
            auto T = irreducible_characters(G);
            auto rep = prediction_report(pick_character(T, character));
            result.json = to_json(rep);
            result.text = predict_text(rep);
        } else if (*frob) {
            auto [f, G] = field_group();
            if ((v == 0) == (v_max == 0)) throw InputError("give exactly one of -v and --v-max");
            std::vector<u64> primes = v ? std::vector<u64>{v} : nt::primes_up_to(v_max);
            result.json = Json::array();
            for (u64 ell : primes) {
                try {
                    auto d = frobenius_datum(f, *G, ell);
                    result.json.push_back(to_json(d, *G));
                    std::ostringstream os;
                    os << "v=" << ell << "  y=" << d.cyclotomic_component << "  order " << d.order_in_G << "  pattern";
                    for (auto k : d.pattern) os << " " << k;
                    if (d.cls) {
                        os << "  class " << *d.cls << " " << rep_str(G->classes()[*d.cls].rep);
                    } else {
                        os << "  ambiguous among";
                        for (auto c : d.candidates) os << " " << rep_str(G->classes()[c].rep);
                    }
                    result.text += os.str() + "\n";
                } catch (const InputError& e) {
                    if (v) throw;
                    result.json.push_back(Json{{"v", ell}, {"skipped", e.what()}});
                    result.text += "v=" + std::to_string(ell) + "  skipped: " + e.what() + "\n";
                }
            }
        } else if (*euler) {
            if (symbolic) {
                auto G = resolve_group(g);
                auto T = irreducible_characters(G);
                const auto& tau = pick_character(T, character);
                std::size_t c;
                if (!order_class.empty()) c = order_q_class(*G, order_class);
                else if (cls >= 0) c = checked_class(*G, cls);
                else throw InputError("--symbolic needs --class or --order-q-class");
                auto av = symbolic_twisted_factor(tau, c);
                auto ab = to_alpha_beta(av);
                std::vector<Json> eig;
                std::ostringstream prod;
                for (const auto& l : eigenvalues_at(tau, c)) {
                    eig.push_back(Json{{"num", l.num}, {"den", l.den}});
                    prod << "(1 - z" << l.den << "^" << l.num << " alpha T)(1 - z" << l.den << "^" << l.num << " beta T)";
                }
                const bool cube = is_cube(av);
                result.json = Json{{"character", tau.id()},
                                   {"class", c},
                                   {"rep", {G->classes()[c].rep.x, G->classes()[c].rep.y}},
                                   {"eigenvalues", eig},
                                   {"product", prod.str()},
                                   {"factor_av", sym_series_str(av, {"a", "v"})},
                                   {"factor_alpha_beta", sym_series_str(ab, {"alpha", "beta"})},
                                   {"is_cube_of_quadratic", cube}};
                result.text = tau.id() + " at class " + std::to_string(c) + " " + rep_str(G->classes()[c].rep) +
                              "\n  = " + prod.str() + "\n  = " + sym_series_str(av, {"a", "v"}) +
                              "\n  cube of a quadratic: " + (cube ? "yes" : "no") + "\n  (zN^k = exp(2 pi i k/N), a = alpha + beta, v = alpha beta)\n";
            } else {
                auto E = need_curve();
                if (v == 0) throw InputError("-v is required");
                const std::int64_t a = trace_of_frobenius(E, v);
                EulerFactor fac;
                Json extra;
                if (trivial) {
                    fac.v = v;
                    fac.poly = {CyclotomicNumber(1), CyclotomicNumber(-a), CyclotomicNumber(static_cast<std::int64_t>(v))};
                    extra = Json{{"character", "trivial"}};
                } else {
                    GroupPtr G;
                    std::optional<IntPoly> f;
                    if (g.q == 0) {
                        auto fg = field_group();
                        f = fg.first;
                        G = fg.second;
                    } else {
                        G = resolve_group(g);
                    }
                    auto T = irreducible_characters(G);
                    const auto& chi = pick_character(T, character);
                    std::vector<std::size_t> classes;
                    if (!order_class.empty()) classes = {order_q_class(*G, order_class)};
                    else if (cls >= 0) classes = {checked_class(*G, cls)};
                    else {
                        if (!f) f = IntPoly::parse(field);
                        classes = frobenius_datum(*f, *G, v).candidates;
                    }
                    fac = twisted_euler_factor(a, v, chi, classes.front());
                    for (std::size_t c : classes)
                        if (twisted_euler_factor(a, v, chi, c).poly != fac.poly)
                            throw InputError("Frobenius at " + std::to_string(v) + " is ambiguous and the candidate classes give different factors");
                    extra = Json{{"character", chi.id()}, {"class", classes.front()}};
                }
                result.json = to_json(fac);
                result.json["a_v"] = a;
                for (auto& [k, val] : extra.items()) result.json[k] = val;
                result.text = "a_" + std::to_string(v) + " = " + std::to_string(a) + "\nL_" + std::to_string(v) +
                              "(T) = " + series_str(fac.poly) + "\n";
            }
        } else if (*series) {
            auto E = need_curve();
            if (X == 0 || X > kMaxSeriesBound) throw InputError("-X must lie in 1.." + std::to_string(kMaxSeriesBound));
            DirichletSeries s;
            std::string what = "trivial";
            if (trivial) {
                s = untwisted_coefficients(E, X);
            } else {
                auto [f, G] = field_group();
                auto T = irreducible_characters(G);
                const auto& chi = pick_character(T, character);
                what = chi.id();
                s = dirichlet_partial(E, chi, field_frobenius_source(f, *G), X);
            }
            result.json = to_json(s);
            result.json["character"] = what;
            std::ostringstream os;
            os << "L(E, " << what << ", s) coefficients up to " << X << " (good unramified primes)\n";
            for (std::size_t k = 0; k < s.an.size(); ++k)
                if (!s.an[k].is_zero()) os << "  a_" << k + 1 << " = " << s.an[k].to_string() << "\n";
            result.text = os.str();
        } else if (*identity) {
            auto E = need_curve();
            if (X == 0 || X > kMaxSeriesBound) throw InputError("-X must lie in 1.." + std::to_string(kMaxSeriesBound));
            auto [f, G] = field_group();
            auto T = irreducible_characters(G);
            auto qi = quotient_identity(G, T);
            auto chk = quotient_identity_series(E, f, G, X);
            result.json = Json{{"group", group_label(*G)},
                               {"virtual", Json{{"multiplicity", qi.multiplicity},
                                                {"faithful_count", qi.faithful_count},
                                                {"equal_at_multiplicity", qi.equal_at_multiplicity},
                                                {"equal_with_exponent_p^r", qi.equal}}},
                               {"series", to_json(chk)}};
            std::ostringstream os;
            os << group_label(*G) << ": perm(F) + perm(K') - perm(K) - perm(F') = " << qi.multiplicity << " x (sum of "
               << qi.faithful_count << " faithful irreducibles): " << (qi.equal_at_multiplicity ? "holds" : "FAILS") << "\n";
            if (chk.holds)
                os << "identity holds to X=" << X << " (good primes)\n";
            else
                os << "identity FAILS at n=" << (chk.first_mismatch ? *chk.first_mismatch : 0) << "\n";
            os << "  " << chk.good_primes << " good primes, " << chk.ambiguous_primes << " with ambiguous Frobenius\n";
            result.text = os.str();
            if (!chk.holds || !qi.equal_at_multiplicity) result.code = kExitInvariant;
        } else if (*sweep) {
            SweepOptions opt;
            if (index_only) opt = SweepOptions{false, false, false, false, false};
            auto params = sweep_parameters(max_order, every_j);
            auto recs = run_sweep(params, opt, threads);
            std::size_t failures = 0;
            Json groups = Json::array();
            std::ostringstream os;
            for (const auto& r : recs) {
                groups.push_back(record_json(r));
                failures += !r.ok();
                os << r.label << " n=" << r.params.n << " r=" << r.params.r << "  classes " << r.classes << "  faithful "
                   << r.faithful << "  index " << r.schur_index << "  " << (r.ok() ? "ok" : "FAIL");
                for (const auto& f : r.failures) os << "  " << f;
                os << "\n";
            }
            os << recs.size() << " groups, " << failures << " failures\n";
            result.json = Json{{"max_order", max_order},
                               {"every_j", every_j},
                               {"groups", std::move(groups)},
                               {"summary", Json{{"groups", recs.size()}, {"failures", failures}}}};
            result.text = os.str();
            if (failures) result.code = kExitInvariant;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConductorOverflow& e) {
        err << "error: " << e.what() << " (raise SCHURGATE_MAX_CONDUCTOR)\n";
        return kExitInput;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }

    const std::string body = format == "json" ? result.json.dump(2) + "\n" : result.text;
    if (out_path.empty()) {
        out << body;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << out_path << "\n";
            return kExitInput;
        }
        file << body;
    }
    return result.code;
}

}  // namespace schurgate
