#include "schurgate/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"
#include "schurgate/predictions.hpp"
#include "schurgate/schur.hpp"

namespace schurgate {

using u64 = std::uint64_t;

std::vector<MetacyclicParams> sweep_parameters(u64 max_order, bool every_j) {
    std::vector<MetacyclicParams> out;
    for (u64 p : nt::primes_up_to(max_order / 7)) {
        if (p == 2) continue;
        for (u64 q = 2 * p + 1; q * p <= max_order; q += 2 * p) {
            if (!nt::is_prime(q)) continue;
            const unsigned vq = nt::valuation(q - 1, p);
            u64 pn = p;
            for (unsigned n = 1; q * pn <= max_order; ++n, pn *= p) {
                for (unsigned r = 1; r <= std::min(n, vq); ++r) {
                    const u64 pr = nt::ipow(p, r);
                    for (u64 j = 2; j < q; ++j) {
                        if (nt::multiplicative_order(j, q) != pr) continue;
                        MetacyclicParams P;
                        P.q = q;
                        P.p = p;
                        P.n = n;
                        P.j = j;
                        P.r = r;
                        P.canonical_j = j;
                        out.push_back(P);
                        if (!every_j) break;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> representatives() {
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (find(i) == i) reps.push_back(i);
        return reps;
    }
};

}  // namespace

TableCertificate certify_table(const CharacterTable& table) {
    TableCertificate cert;
    const auto& G = *table.group;
    const auto& rows = table.characters;
    const auto& classes = G.classes();
    const std::size_t k = classes.size();
    cert.count_matches = rows.size() == k;
    if (!cert.count_matches) return cert;

    std::int64_t deg_sum = 0;
    try {
        for (const auto& chi : rows) deg_sum += chi.degree() * chi.degree();
    } catch (const std::exception&) {
        return cert;
    }
    cert.degree_sum = deg_sum == static_cast<std::int64_t>(G.order());

    const u64 M = G.q() * G.pn();
    const auto gens = nt::unit_group_generators(M);
    std::vector<std::vector<std::size_t>> pow_maps;
    for (u64 g : gens) {
        std::vector<std::size_t> P(k);
        std::vector<bool> hit(k, false);
        for (std::size_t c = 0; c < k; ++c) {
            P[c] = G.power_class(c, g);
            if (hit[P[c]] || classes[P[c]].size != classes[c].size) return cert;
            hit[P[c]] = true;
        }
        pow_maps.push_back(std::move(P));
    }

    // intern the values: equal numbers get equal ids
    std::unordered_map<CyclotomicNumber, std::uint32_t, CyclotomicHash> ids;
    std::unordered_map<const void*, std::uint32_t> by_address;
    std::vector<const CyclotomicNumber*> value_of;
    std::vector<std::vector<std::uint32_t>> V(rows.size(), std::vector<std::uint32_t>(k));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < k; ++c) {
            const auto& v = rows[i][c];
            auto [ait, fresh] = by_address.try_emplace(v.identity(), 0);
            if (fresh) {
                auto [it, added] = ids.try_emplace(v, static_cast<std::uint32_t>(value_of.size()));
                if (added) value_of.push_back(&v);
                ait->second = it->second;
            }
            V[i][c] = ait->second;
        }

    // sigma_g(chi(c)) = chi(c^g), value by value
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        std::vector<std::int64_t> image(value_of.size(), -1);
        for (std::size_t id = 0; id < value_of.size(); ++id) {
            const auto& v = *value_of[id];
            auto it = ids.find(v.galois(static_cast<std::int64_t>(gens[gi] % v.conductor())));
            if (it != ids.end()) image[id] = it->second;
        }
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t c = 0; c < k; ++c)
                if (image[V[i][c]] != static_cast<std::int64_t>(V[i][pow_maps[gi][c]])) return cert;
    }
    cert.power_maps = true;

    // rows are permuted: chi o pow_g is again a row
    auto row_hash = [&](std::size_t i, const std::vector<std::size_t>* P) {
        std::size_t h = 0;
        for (std::size_t c = 0; c < k; ++c) h = (h * 1000003u) ^ V[i][P ? (*P)[c] : c];
        return h;
    };
    std::unordered_multimap<std::size_t, std::size_t> by_hash;
    for (std::size_t i = 0; i < rows.size(); ++i) by_hash.emplace(row_hash(i, nullptr), i);
    UnionFind row_uf(rows.size()), class_uf(k);
    for (const auto& P : pow_maps) {
        for (std::size_t c = 0; c < k; ++c) class_uf.unite(c, P[c]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto [lo, hi] = by_hash.equal_range(row_hash(i, &P));
            bool found = false;
            for (auto it = lo; it != hi && !found; ++it) {
                bool same = true;
                for (std::size_t c = 0; c < k && same; ++c) same = V[it->second][c] == V[i][P[c]];
                if (same) {
                    row_uf.unite(i, it->second);
                    found = true;
                }
            }
            if (!found) return cert;
        }
    }
    cert.galois_closed = true;

    std::vector<std::complex<double>> approx(value_of.size());
    for (std::size_t id = 0; id < value_of.size(); ++id) approx[id] = value_of[id]->approx();

    const auto row_reps = row_uf.representatives();
    cert.row_orbit.resize(rows.size());
    {
        std::unordered_map<std::size_t, std::size_t> smallest;
        for (std::size_t i = 0; i < rows.size(); ++i) smallest.try_emplace(row_uf.find(i), i);
        for (std::size_t i = 0; i < rows.size(); ++i) cert.row_orbit[i] = smallest[row_uf.find(i)];
    }
    const auto class_reps = class_uf.representatives();
    cert.row_orbits = row_reps.size();
    cert.class_orbits = class_reps.size();

    const double order = static_cast<double>(G.order());
    std::vector<std::complex<double>> weighted(k);
    for (std::size_t i : row_reps) {
        for (std::size_t c = 0; c < k; ++c) weighted[c] = static_cast<double>(classes[c].size) * std::conj(approx[V[i][c]]);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            std::complex<double> s = 0;
            const auto& row = V[j];
            for (std::size_t c = 0; c < k; ++c) s += weighted[c] * approx[row[c]];
            cert.row_error = std::max(cert.row_error, std::abs(s - (i == j ? order : 0.0)));
        }
    }
    // columns: sum over rows of conj(chi(c)) chi(c2), accumulated row by row
    std::vector<std::complex<double>> acc(k);
    for (std::size_t c : class_reps) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto w = std::conj(approx[V[i][c]]);
            if (w == 0.0) continue;
            const auto& row = V[i];
            for (std::size_t c2 = 0; c2 < k; ++c2) acc[c2] += w * approx[row[c2]];
        }
        for (std::size_t c2 = 0; c2 < k; ++c2) {
            const double target = c == c2 ? static_cast<double>(G.centralizer_order(c)) : 0.0;
            cert.column_error = std::max(cert.column_error, std::abs(acc[c2] - target));
        }
    }
    cert.rows_orthogonal = cert.row_error < 0.25;
    cert.columns_orthogonal = cert.column_error < 0.25;
    return cert;
}

namespace {

// Gaussian periods times roots of unity, cached across the rows of one group.
class MackeyOracle {
public:
    explicit MackeyOracle(const MetacyclicGroup& G) : G_(G), d_(G.pn() / G.pr()) {}

    bool holds(const Character& induced, const PsiDescriptor& psi) {
        const u64 q = G_.q(), pr = G_.pr();
        for (std::size_t c = 0; c < G_.classes().size(); ++c) {
            const auto& rep = G_.classes()[c].rep;
            if (rep.y % pr != 0) {
                if (!induced[c].is_zero()) return false;
                continue;
            }
            const u64 x = nt::mulmod(psi.u % q, rep.x, q);
            const u64 s = psi.w % d_ * (rep.y / pr) % d_;
            if (expected(x, s) != induced[c]) return false;
        }
        return true;
    }

private:
    // sum_{t < p^r} zeta_q^{x j^t} zeta_d^s
    const CyclotomicNumber& expected(u64 x, u64 s) {
        const u64 key = G_.orbit_min(x) * d_ + s;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const u64 q = G_.q();
        std::vector<std::pair<std::int64_t, Rational>> terms;
        for (u64 t = 0; t < G_.pr(); ++t)
            terms.emplace_back(static_cast<std::int64_t>(nt::mulmod(x, G_.j_power(t), q) * d_ + s * q), Rational(1));
        return cache_.emplace(key, CyclotomicNumber::from_exponents(q * d_, terms)).first->second;
    }

    const MetacyclicGroup& G_;
    u64 d_;
    std::unordered_map<u64, CyclotomicNumber> cache_;
};

}  // namespace

bool mackey_holds(const Character& induced, const PsiDescriptor& psi) {
    return MackeyOracle(induced.group()).holds(induced, psi);
}

SweepRecord sweep_group(const MetacyclicParams& params, const SweepOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.params = params;
    auto fail = [&](std::string what) { rec.failures.push_back(std::move(what)); };
    try {
        auto G = make_group(params.q, params.p, params.n, params.j);
        rec.params = G->params();
        rec.label = group_label(*G);
        const u64 q = G->q(), p = G->p();
        const unsigned n = G->n(), r = G->r();
        auto table = irreducible_characters(G);
        rec.classes = G->classes().size();
        auto faithful = faithful_characters(table);
        rec.faithful = faithful.size();
        rec.faithful_formula = faithful_count_formula(q, p, n, r);
        if (rec.faithful != rec.faithful_formula) fail("faithful count differs from the formula");
        if (faithful.empty()) throw InvariantViolation("no faithful irreducible");

        rec.schur_index = global_index(faithful.front()).global;
        if ((q - 1) % G->pn() == 0) {
            rec.index_rule = rec.schur_index == 1;
        } else {
            const int s = nt::prime_power_exponent(rec.schur_index, p);
            rec.index_rule = s >= 1 && static_cast<unsigned>(s) <= r;
        }
        if (!rec.index_rule) fail("Schur index " + std::to_string(rec.schur_index) + " breaks the p^n | q-1 rule");

        if (options.table) {
            rec.certificate = certify_table(table);
            if (!rec.certificate.ok()) fail("character table certificate failed");
        }
        // rows to evaluate directly: all, or the first and last member of each Galois orbit
        const auto& rows = table.characters;
        std::vector<bool> direct(rows.size(), true);
        if (options.table && rec.certificate.ok() && !options.exhaustive) {
            std::unordered_map<std::size_t, std::size_t> last;
            for (std::size_t i = 0; i < rows.size(); ++i) last[rec.certificate.row_orbit[i]] = i;
            for (std::size_t i = 0; i < rows.size(); ++i)
                direct[i] = rec.certificate.row_orbit[i] == i || last[rec.certificate.row_orbit[i]] == i;
        }
        std::vector<std::size_t> faithful_rows;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (direct[i] && is_faithful(rows[i])) faithful_rows.push_back(i);
        if (faithful_rows.empty()) throw InvariantViolation("no faithful row selected");
        std::vector<bool> counted(rows.size(), false);
        auto touch = [&](std::size_t i) {
            if (!counted[i]) ++rec.checked_rows;
            counted[i] = true;
        };

        if (options.mackey) {
            MackeyOracle oracle(*G);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto kind = rows[i].provenance().kind;
                if (!direct[i] || (kind != Provenance::Kind::Induced && kind != Provenance::Kind::LiftedFromQuotient)) continue;
                touch(i);
                if (!oracle.holds(rows[i], rows[i].provenance().psi)) {
                    rec.mackey = false;
                    fail("Mackey restriction fails for " + rows[i].id());
                    break;
                }
            }
        }
        if (options.fields) {
            const auto formula = formula_field(*G);
            for (std::size_t i : faithful_rows) {
                touch(i);
                if (!(character_field(rows[i]) == formula)) {
                    rec.fields = false;
                    fail("field of values differs for " + rows[i].id());
                    break;
                }
            }
        }
        if (options.tensors) {
            for (std::size_t i : faithful_rows) {
                const auto& tau = rows[i];
                touch(i);
                auto td = tensor_decompose(tau);
                if (td.chi.degree() != 1 || td.tau_r.degree() != static_cast<std::int64_t>(G->pr()) ||
                    tensor(td.tau_r, td.chi).values() != tau.values()) {
                    rec.tensors = false;
                    fail("tensor decomposition fails for " + tau.id());
                    break;
                }
            }
        }
        if (options.divisibility) {
            std::vector<Character> perms;
            for (const auto& H : G->tower_subgroups()) perms.push_back(permutation_character(G, H));
            for (std::size_t i : faithful_rows) {
                const auto& tau = rows[i];
                touch(i);
                const u64 m = global_index(tau).global;
                for (const auto& rho : perms) {
                    Rational mult = inner_product(rho, tau);
                    if (!mult.small_integer() || *mult.small_integer() < 0 ||
                        *mult.small_integer() % static_cast<std::int64_t>(m) != 0) {
                        rec.divisibility = false;
                        fail("multiplicity of " + tau.id() + " in " + rho.id() + " is not divisible");
                    }
                }
            }
        }
    } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<SweepRecord> run_sweep(const std::vector<MetacyclicParams>& params, const SweepOptions& options,
                                   unsigned threads, const std::function<void(const SweepRecord&)>& progress) {
    std::vector<SweepRecord> out(params.size());
    std::atomic<std::size_t> next{0};
    std::mutex report;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < params.size();) {
            out[i] = sweep_group(params[i], options);
            if (progress) {
                std::lock_guard lock(report);
                progress(out[i]);
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(params.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace schurgate
