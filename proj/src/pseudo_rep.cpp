#include "favres/pseudo_rep.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace favres {

int FiniteGroup::inverse(int a) const {
    for (int x = 0; x < order; ++x)
        if (table[a][x] == identity) return x;
    throw std::invalid_argument("group element has no inverse");
}

FiniteGroup make_group(std::vector<std::vector<int>> table, std::vector<std::string> names) {
    int n = (int)table.size();
    if (n == 0) throw std::invalid_argument("group: empty table");
    for (const auto& row : table) {
        if ((int)row.size() != n) throw std::invalid_argument("group: table not square");
        for (int x : row)
            if (x < 0 || x >= n) throw std::invalid_argument("group: entry out of range");
    }
    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) identity = e;
    }
    if (identity < 0) throw std::invalid_argument("group: no identity");
    for (int a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (int x = 0; x < n && !has_inverse; ++x)
            has_inverse = table[a][x] == identity && table[x][a] == identity;
        if (!has_inverse) throw std::invalid_argument("group: missing inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw std::invalid_argument("group: not associative");
    if (!names.empty() && (int)names.size() != n)
        throw std::invalid_argument("group: wrong number of names");
    return {n, std::move(table), identity, std::move(names)};
}

FiniteGroup make_cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group: order must be positive");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int a = 0; a < n; ++a) {
        names[a] = "g" + std::to_string(a);
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    }
    return make_group(std::move(table), std::move(names));
}

FiniteGroup make_symmetric_group(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("symmetric group: need 1 <= n <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::vector<int>& q) {
        auto it = std::lower_bound(perms.begin(), perms.end(), q);
        return (int)(it - perms.begin());
    };
    int order = (int)perms.size();
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    std::vector<std::string> names(order);
    for (int a = 0; a < order; ++a) {
        std::string nm = "(";
        for (int i = 0; i < n; ++i) nm += std::to_string(perms[a][i]);
        names[a] = nm + ")";
        for (int b = 0; b < order; ++b) {
            std::vector<int> q(n);
            for (int i = 0; i < n; ++i) q[i] = perms[a][perms[b][i]];
            table[a][b] = index_of(q);
        }
    }
    return make_group(std::move(table), std::move(names));
}

FiniteGroup make_dihedral_group(int n) {
    if (n < 1) throw std::invalid_argument("dihedral group: order parameter must be positive");
    int order = 2 * n;
    auto idx = [&](int i, int f) { return ((i % n + n) % n) + n * f; };
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    std::vector<std::string> names(order);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 2; ++f) {
            names[idx(i, f)] = "r" + std::to_string(i) + (f ? "s" : "");
            for (int j = 0; j < n; ++j)
                for (int g2 = 0; g2 < 2; ++g2)
                    table[idx(i, f)][idx(j, g2)] = idx(f ? i - j : i + j, f ^ g2);
        }
    return make_group(std::move(table), std::move(names));
}

bool verdict_ok(const PseudoRepVerdict& v) { return v.status == PseudoRepStatus::Valid; }

std::string status_name(PseudoRepStatus s) {
    switch (s) {
        case PseudoRepStatus::Valid: return "valid";
        case PseudoRepStatus::FailsCondition1: return "fails-at-condition-1";
        case PseudoRepStatus::FailsCondition2: return "fails-at-condition-2";
        case PseudoRepStatus::FailsCondition3: return "fails-at-condition-3";
        case PseudoRepStatus::NotMinimal: return "not-minimal";
    }
    return "unknown";
}

namespace {

struct SignedCycles {
    int sign = 1;                         // +1 or -1
    std::vector<std::vector<int>> cycles; // letters in traversal order
};

SignedCycles decompose(const std::vector<int>& sigma) {
    int n = (int)sigma.size();
    std::vector<int> image_seen(n, 0);
    for (int x : sigma) {
        if (x < 0 || x >= n || image_seen[x]) throw std::invalid_argument("not a permutation");
        image_seen[x] = 1;
    }
    SignedCycles out;
    std::vector<int> done(n, 0);
    for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::vector<int> cycle;
        int j = i;
        while (!done[j]) {
            done[j] = 1;
            cycle.push_back(j);
            j = sigma[j];
        }
        out.cycles.push_back(std::move(cycle));
    }
    out.sign = ((n - (int)out.cycles.size()) % 2 == 0) ? 1 : -1;
    return out;
}

Int eval_cycles(const FiniteGroup& g, const PseudoRep& pr, const SignedCycles& sc,
                const std::vector<int>& tuple) {
    Int prod = 1;
    for (const auto& cycle : sc.cycles) {
        int elt = g.identity;
        for (int letter : cycle) elt = g.mul(elt, tuple[letter]);
        prod = mul_mod(prod, pr.values[elt], pr.modulus);
    }
    return prod;
}

std::vector<SignedCycles> all_signed_cycles(int letters) {
    std::vector<int> sigma(letters);
    for (int i = 0; i < letters; ++i) sigma[i] = i;
    std::vector<SignedCycles> out;
    do {
        out.push_back(decompose(sigma));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

Int signed_sum(const FiniteGroup& g, const PseudoRep& pr,
               const std::vector<SignedCycles>& perms, const std::vector<int>& tuple) {
    Int sum = 0;
    for (const SignedCycles& sc : perms) {
        Int v = eval_cycles(g, pr, sc, tuple);
        sum = add_mod(sum, sc.sign > 0 ? v : normalize_mod(-v, pr.modulus), pr.modulus);
    }
    return sum;
}

struct SweepResult {
    std::optional<std::vector<int>> nonzero_tuple;
    bool sampled = false;
};

// Looks for a tuple with nonzero alternating sum over `letters` letters.
SweepResult sweep_identity(const FiniteGroup& g, const PseudoRep& pr, int letters,
                           long long budget, std::uint64_t seed) {
    auto perms = all_signed_cycles(letters);
    SweepResult res;
    long long total = 1;
    bool exhaustive = true;
    for (int i = 0; i < letters; ++i) {
        if (total > budget / g.order + 1) {
            exhaustive = false;
            break;
        }
        total *= g.order;
    }
    if (exhaustive && total <= budget) {
        std::vector<int> tuple(letters, 0);
        while (true) {
            if (signed_sum(g, pr, perms, tuple) != 0) {
                res.nonzero_tuple = tuple;
                return res;
            }
            int i = letters - 1;
            while (i >= 0 && tuple[i] + 1 >= g.order) tuple[i--] = 0;
            if (i < 0) break;
            ++tuple[i];
        }
        return res;
    }
    res.sampled = true;
    std::mt19937_64 rng(seed + letters);
    std::vector<int> tuple(letters);
    for (long long it = 0; it < budget; ++it) {
        for (int i = 0; i < letters; ++i) tuple[i] = (int)(rng() % (std::uint64_t)g.order);
        if (signed_sum(g, pr, perms, tuple) != 0) {
            res.nonzero_tuple = tuple;
            return res;
        }
    }
    return res;
}

void validate_pseudo_rep_input(const FiniteGroup& g, const PseudoRep& pr) {
    if (g.order <= 0) throw std::invalid_argument("pseudo-rep: empty group");
    if (pr.modulus < 2) throw std::invalid_argument("pseudo-rep: modulus must be >= 2");
    if (pr.d < 1 || pr.d > 8) throw std::invalid_argument("pseudo-rep: need 1 <= d <= 8");
    if ((int)pr.values.size() != g.order)
        throw std::invalid_argument("pseudo-rep: one value per group element required");
}

} // namespace

Int tau_sigma(const FiniteGroup& g, const PseudoRep& pr, const std::vector<int>& sigma,
              const std::vector<int>& tuple) {
    validate_pseudo_rep_input(g, pr);
    if (sigma.size() != tuple.size())
        throw std::invalid_argument("tau_sigma: permutation and tuple sizes differ");
    for (int x : tuple)
        if (x < 0 || x >= g.order) throw std::invalid_argument("tau_sigma: bad element index");
    return eval_cycles(g, pr, decompose(sigma), tuple);
}

Int alternating_trace_sum(const FiniteGroup& g, const PseudoRep& pr,
                          const std::vector<int>& tuple) {
    validate_pseudo_rep_input(g, pr);
    if (tuple.empty() || tuple.size() > 9)
        throw std::invalid_argument("alternating sum: need 1..9 letters");
    return signed_sum(g, pr, all_signed_cycles((int)tuple.size()), tuple);
}

PseudoRepVerdict check_pseudo_rep(const FiniteGroup& g, const PseudoRep& pr, long long budget,
                                  std::uint64_t seed) {
    validate_pseudo_rep_input(g, pr);
    if (budget < 1) throw std::invalid_argument("pseudo-rep: budget must be positive");
    PseudoRepVerdict v;
    if (normalize_mod(pr.values[g.identity] - pr.d, pr.modulus) != 0) {
        v.status = PseudoRepStatus::FailsCondition1;
        v.witness = {g.identity};
        v.message = "value at the identity is not the claimed dimension";
        return v;
    }
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (normalize_mod(pr.values[g.mul(a, b)] - pr.values[g.mul(b, a)], pr.modulus) !=
                0) {
                v.status = PseudoRepStatus::FailsCondition2;
                v.witness = {a, b};
                v.message = "tau(ab) != tau(ba)";
                return v;
            }
    SweepResult top = sweep_identity(g, pr, pr.d + 1, budget, seed);
    v.sampled = top.sampled;
    if (top.nonzero_tuple) {
        v.status = PseudoRepStatus::FailsCondition3;
        v.witness = *top.nonzero_tuple;
        v.message = "alternating identity fails on " + std::to_string(pr.d + 1) + " letters";
        return v;
    }
    if (pr.d >= 2) {
        SweepResult lower = sweep_identity(g, pr, pr.d, budget, seed);
        v.sampled = v.sampled || lower.sampled;
        if (!lower.nonzero_tuple) {
            v.status = PseudoRepStatus::NotMinimal;
            v.message = "alternating identity already holds on " + std::to_string(pr.d) +
                        " letters";
            return v;
        }
    }
    v.status = PseudoRepStatus::Valid;
    v.message = "valid";
    return v;
}

PseudoRep trace_of_rep(const FiniteGroup& g, const std::vector<Mat>& rho, Int modulus) {
    if (modulus < 2) throw std::invalid_argument("trace_of_rep: modulus must be >= 2");
    if ((int)rho.size() != g.order)
        throw std::invalid_argument("trace_of_rep: one matrix per element required");
    int n = rho.empty() ? 0 : rho[0].rows;
    if (n < 1) throw std::invalid_argument("trace_of_rep: empty representation");
    std::vector<Mat> r = rho;
    for (Mat& mt : r) {
        if (mt.rows != n || mt.cols != n)
            throw std::invalid_argument("trace_of_rep: matrices must be square, same size");
        for (Int& x : mt.a) x = normalize_mod(x, modulus);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (r[g.identity].at(i, j) != (i == j ? 1 % modulus : 0))
                throw std::invalid_argument("trace_of_rep: identity does not map to identity");
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            Mat prod = mat_mul(r[a], r[b], modulus);
            if (prod.a != r[g.mul(a, b)].a)
                throw std::invalid_argument("trace_of_rep: not a homomorphism");
        }
    PseudoRep pr;
    pr.modulus = modulus;
    pr.d = n;
    pr.values.resize(g.order);
    for (int a = 0; a < g.order; ++a) {
        Int t = 0;
        for (int i = 0; i < n; ++i) t = add_mod(t, r[a].at(i, i), modulus);
        pr.values[a] = t;
    }
    return pr;
}

void Polynomial::add_term(std::vector<int> monomial, long long c) {
    if (c == 0) return;
    std::sort(monomial.begin(), monomial.end());
    auto it = coeffs.find(monomial);
    if (it == coeffs.end()) {
        coeffs.emplace(std::move(monomial), c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (coeffs.empty()) return "0";
    auto var = [&](int i) {
        return i < (int)names.size() ? "t[" + names[i] + "]" : "t" + std::to_string(i);
    };
    std::string out;
    for (const auto& [mon, c] : coeffs) {
        long long a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string body;
        for (size_t i = 0; i < mon.size();) {
            size_t j = i;
            while (j < mon.size() && mon[j] == mon[i]) ++j;
            if (!body.empty()) body += "*";
            body += var(mon[i]);
            if (j - i > 1) body += "^" + std::to_string(j - i);
            i = j;
        }
        if (body.empty()) {
            out += std::to_string(a);
        } else {
            if (a != 1) out += std::to_string(a) + "*";
            out += body;
        }
    }
    return out;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [mon, c] : b.coeffs) out.add_term(mon, -c);
    return out;
}

Polynomial substitute_two(const Polynomial& poly, int var) {
    Polynomial out;
    for (const auto& [mon, c] : poly.coeffs) {
        std::vector<int> rest;
        long long scale = 1;
        for (int v : mon) {
            if (v == var)
                scale *= 2;
            else
                rest.push_back(v);
        }
        out.add_term(std::move(rest), c * scale);
    }
    return out;
}

Int evaluate_polynomial(const Polynomial& poly, const std::vector<Int>& tau, Int modulus) {
    Int sum = 0;
    for (const auto& [mon, c] : poly.coeffs) {
        Int term = normalize_mod((Int)c, modulus);
        for (int v : mon) {
            if (v < 0 || v >= (int)tau.size())
                throw std::invalid_argument("evaluate: variable out of range");
            term = mul_mod(term, normalize_mod(tau[v], modulus), modulus);
        }
        sum = add_mod(sum, term, modulus);
    }
    return sum;
}

namespace {

// Flips the sign so the leading coefficient is positive, giving one
// representative per {rel, -rel} pair for deduplication.
Polynomial canonical_sign(Polynomial p) {
    if (!p.coeffs.empty() && p.coeffs.begin()->second < 0)
        for (auto& [mon, c] : p.coeffs) c = -c;
    return p;
}

std::string poly_key(const Polynomial& p) {
    std::string key;
    for (const auto& [mon, c] : p.coeffs) {
        key += std::to_string(c) + ":";
        for (int v : mon) key += std::to_string(v) + ",";
        key += ";";
    }
    return key;
}

} // namespace

std::vector<Polynomial> universal_ring_relations(const FiniteGroup& g) {
    std::vector<Polynomial> out;
    Polynomial unit;
    unit.add_term({g.identity}, 1);
    unit.add_term({}, -2);
    out.push_back(unit);

    std::map<std::string, Polynomial> commutators;
    for (int a = 0; a < g.order; ++a)
        for (int b = a + 1; b < g.order; ++b) {
            Polynomial p;
            p.add_term({g.mul(a, b)}, 1);
            p.add_term({g.mul(b, a)}, -1);
            if (p.is_zero()) continue;
            p = canonical_sign(std::move(p));
            commutators.emplace(poly_key(p), std::move(p));
        }
    for (auto& [key, p] : commutators) out.push_back(std::move(p));

    std::map<std::string, Polynomial> cubics;
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            for (int c = 0; c < g.order; ++c) {
                Polynomial p;
                p.add_term({a, b, c}, 1);
                p.add_term({g.mul(g.mul(a, b), c)}, 1);
                p.add_term({g.mul(g.mul(a, c), b)}, 1);
                p.add_term({a, g.mul(b, c)}, -1);
                p.add_term({b, g.mul(a, c)}, -1);
                p.add_term({c, g.mul(a, b)}, -1);
                if (p.is_zero()) continue;
                p = canonical_sign(std::move(p));
                cubics.emplace(poly_key(p), std::move(p));
            }
    for (auto& [key, p] : cubics) out.push_back(std::move(p));
    return out;
}

std::vector<Int> evaluate_relations(const std::vector<Polynomial>& relations,
                                    const std::vector<Int>& tau, Int modulus) {
    std::vector<Int> out;
    out.reserve(relations.size());
    for (const Polynomial& p : relations) out.push_back(evaluate_polynomial(p, tau, modulus));
    return out;
}

PseudoRepVerdict hecke_assignment(const FiniteGroup& g,
                                  const std::vector<std::string>& element_labels,
                                  const std::map<std::string, Int>& eigenvalues, Int modulus,
                                  PseudoRep* out, long long budget, std::uint64_t seed) {
    if ((int)element_labels.size() != g.order)
        throw std::invalid_argument("hecke_assignment: one label per element required");
    PseudoRep pr;
    pr.modulus = modulus;
    pr.d = 2;
    pr.values.resize(g.order);
    for (int a = 0; a < g.order; ++a) {
        auto it = eigenvalues.find(element_labels[a]);
        if (it == eigenvalues.end())
            throw std::invalid_argument("hecke_assignment: unlabeled element referenced: " +
                                        element_labels[a]);
        pr.values[a] = normalize_mod(it->second, modulus);
    }
    if (out) *out = pr;
    return check_pseudo_rep(g, pr, budget, seed);
}

} // namespace favres
