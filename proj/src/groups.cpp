#include "engine/groups.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace groups {

using scalars::RootOfUnity;

int FiniteGroup::pow(int a, long e) const {
    long m = element_order[a];
    e %= m;
    if (e < 0) e += m;
    int r = identity;
    for (long i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::generator(const std::string& name) const {
    for (size_t i = 0; i < gen_names.size(); ++i)
        if (gen_names[i] == name) return gen_elems[i];
    throw std::runtime_error("unknown generator '" + name + "'");
}

int FiniteGroup::element_by_word(const std::string& word) const {
    if (word.empty()) throw std::runtime_error("empty group word");
    int acc = identity;
    size_t pos = 0;
    while (pos < word.size()) {
        size_t star = word.find('*', pos);
        std::string tok = word.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        pos = star == std::string::npos ? word.size() : star + 1;
        if (tok == "1") continue;
        long e = 1;
        size_t caret = tok.find('^');
        std::string name = tok;
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            try {
                e = std::stol(tok.substr(caret + 1));
            } catch (...) {
                throw std::runtime_error("bad exponent in group word token '" + tok + "'");
            }
        }
        acc = mul(acc, pow(generator(name), e));
    }
    return acc;
}

namespace {

void validate_and_finish(FiniteGroup& G) {
    int n = G.n;
    if ((int)G.table.size() != n) throw std::runtime_error("group table has wrong row count");
    for (const auto& row : G.table) {
        if ((int)row.size() != n) throw std::runtime_error("group table has wrong column count");
        for (int v : row)
            if (v < 0 || v >= n) throw std::runtime_error("group table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (G.mul(G.identity, a) != a || G.mul(a, G.identity) != a)
            throw std::runtime_error("identity element is not neutral");

    if (n <= 512) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                        throw std::runtime_error("multiplication table is not associative");
    } else {
        unsigned long long s = 0x9e3779b97f4a7c15ull;
        auto rnd = [&]() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            return (int)(s % n);
        };
        for (int t = 0; t < 200000; ++t) {
            int a = rnd(), b = rnd(), c = rnd();
            if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                throw std::runtime_error("multiplication table is not associative");
        }
    }

    G.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (G.mul(a, b) == G.identity && G.mul(b, a) == G.identity) {
                G.inverse[a] = b;
                break;
            }
        if (G.inverse[a] < 0) throw std::runtime_error("element without inverse");
    }

    G.element_order.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int acc = a, ord = 1;
        while (acc != G.identity) {
            acc = G.mul(acc, a);
            if (++ord > n) throw std::runtime_error("element order exceeds group order");
        }
        G.element_order[a] = ord;
    }

    // Shortest generator words by breadth-first search; also proves that the
    // named generators generate the whole group.
    G.element_word.assign(n, "");
    G.element_word[G.identity] = "1";
    std::deque<int> queue{G.identity};
    int reached = 1;
    while (!queue.empty()) {
        int g = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < G.gen_elems.size(); ++i) {
            int h = G.mul(g, G.gen_elems[i]);
            if (!G.element_word[h].empty()) continue;
            G.element_word[h] =
                g == G.identity ? G.gen_names[i] : G.element_word[g] + "*" + G.gen_names[i];
            queue.push_back(h);
            ++reached;
        }
    }
    if (reached != n) throw std::runtime_error("named generators do not generate the group");
}

}  // namespace

FiniteGroup make_table_group(std::vector<std::vector<int>> table, int identity,
                             std::vector<std::string> gen_names, std::vector<int> gen_elems) {
    if (gen_names.size() != gen_elems.size())
        throw std::runtime_error("generator name/element count mismatch");
    FiniteGroup G;
    G.n = (int)table.size();
    G.table = std::move(table);
    G.identity = identity;
    G.gen_names = std::move(gen_names);
    G.gen_elems = std::move(gen_elems);
    validate_and_finish(G);
    return G;
}

FiniteGroup make_cyclic(int m, const std::string& gen_name) {
    if (m < 1) throw std::runtime_error("cyclic group order must be positive");
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) table[a][b] = (a + b) % m;
    return make_table_group(std::move(table), 0, {gen_name}, {m == 1 ? 0 : 1});
}

FiniteGroup make_gamma_quotient(int n, int m_a, int m_b) {
    if (n < 1 || m_a < 1 || m_b < 1) throw std::runtime_error("gamma quotient orders must be positive");
    if ((m_a % 2 != 0 && n > 2) || m_b % n != 0)
        throw std::runtime_error(
            "gamma quotient relations collapse nu below order " + std::to_string(n) +
            ": need m_a even (or n <= 2) and n | m_b");
    int N = n * m_a * m_b;
    auto idx = [&](int c, int x, int y) { return (c * m_a + x) * m_b + y; };
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < m_a; ++x)
            for (int y = 0; y < m_b; ++y)
                for (int c2 = 0; c2 < n; ++c2)
                    for (int x2 = 0; x2 < m_a; ++x2)
                        for (int y2 = 0; y2 < m_b; ++y2) {
                            int sign = x % 2 == 0 ? 1 : -1;
                            int c3 = c + sign * c2 + sign * y * (x2 % 2);
                            c3 = ((c3 % n) + n) % n;
                            table[idx(c, x, y)][idx(c2, x2, y2)] =
                                idx(c3, (x + x2) % m_a, (y + y2) % m_b);
                        }
    FiniteGroup G = make_table_group(std::move(table), idx(0, 0, 0), {"nu", "a", "b"},
                                     {idx(1 % n, 0, 0), idx(0, 1 % m_a, 0), idx(0, 0, 1 % m_b)});
    int nu = G.generator("nu"), a = G.generator("a"), b = G.generator("b");
    if (G.element_order[nu] != n)
        throw std::runtime_error("gamma quotient: nu does not have order " + std::to_string(n));
    if (G.mul(b, a) != G.mul(nu, G.mul(a, b)) || G.mul(nu, a) != G.mul(a, G.inv(nu)) ||
        G.mul(nu, b) != G.mul(b, nu))
        throw std::runtime_error("gamma quotient: defining relations fail");
    return G;
}

FiniteGroup make_epsilon_twisted(int theta, const std::vector<std::vector<int>>& commutation,
                                 const std::vector<int>& square_flags) {
    if (theta < 1 || theta > 20) throw std::runtime_error("epsilon twisted rank out of range");
    if ((int)commutation.size() != theta || (int)square_flags.size() != theta)
        throw std::runtime_error("epsilon twisted parameter size mismatch");
    for (int i = 0; i < theta; ++i) {
        if ((int)commutation[i].size() != theta)
            throw std::runtime_error("epsilon twisted commutation matrix not square");
        if (commutation[i][i] != 0) throw std::runtime_error("epsilon twisted commutation diagonal must be 0");
        if (square_flags[i] != 0 && square_flags[i] != 1)
            throw std::runtime_error("epsilon twisted square flag must be 0/1");
        for (int j = 0; j < theta; ++j) {
            if (commutation[i][j] != 0 && commutation[i][j] != 1)
                throw std::runtime_error("epsilon twisted commutation entry must be 0/1");
            if (commutation[i][j] != commutation[j][i])
                throw std::runtime_error("epsilon twisted commutation matrix must be symmetric");
        }
    }
    int N = 1 << (theta + 1);
    auto epsbit = [&](int g) { return g & 1; };
    auto xbit = [&](int g, int i) { return (g >> i) & 1; };  // i in 1..theta
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    for (int g = 0; g < N; ++g)
        for (int h = 0; h < N; ++h) {
            int e = epsbit(g) ^ epsbit(h);
            for (int i = 1; i <= theta; ++i)
                for (int j = 1; j < i; ++j)
                    e ^= xbit(g, i) & xbit(h, j) & commutation[i - 1][j - 1];
            for (int i = 1; i <= theta; ++i) e ^= xbit(g, i) & xbit(h, i) & square_flags[i - 1];
            table[g][h] = e | (((g >> 1) ^ (h >> 1)) << 1);
        }
    std::vector<std::string> names{"eps"};
    std::vector<int> gens{1};
    for (int i = 1; i <= theta; ++i) {
        names.push_back("s" + std::to_string(i));
        gens.push_back(1 << i);
    }
    FiniteGroup G = make_table_group(std::move(table), 0, std::move(names), std::move(gens));
    for (int i = 1; i <= theta; ++i)
        for (int j = 1; j <= theta; ++j) {
            int si = 1 << i, sj = 1 << j;
            int lhs = G.mul(G.mul(G.mul(si, sj), G.inv(si)), G.inv(sj));
            int rhs = i == j ? 0 : (commutation[i - 1][j - 1] != 0 ? 1 : 0);
            if (lhs != rhs) throw std::runtime_error("epsilon twisted commutation relation fails");
        }
    return G;
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    for (const auto& na : A.gen_names)
        for (const auto& nb : B.gen_names)
            if (na == nb)
                throw std::runtime_error("direct product factors share generator name '" + na + "'");
    int N = A.n * B.n;
    auto idx = [&](int a, int b) { return a * B.n + b; };
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2)
                    table[idx(a, b)][idx(a2, b2)] = idx(A.mul(a, a2), B.mul(b, b2));
    std::vector<std::string> names = A.gen_names;
    std::vector<int> gens;
    for (int g : A.gen_elems) gens.push_back(idx(g, B.identity));
    for (size_t i = 0; i < B.gen_names.size(); ++i) {
        names.push_back(B.gen_names[i]);
        gens.push_back(idx(A.identity, B.gen_elems[i]));
    }
    return make_table_group(std::move(table), idx(A.identity, B.identity), std::move(names),
                            std::move(gens));
}

int Subgroup::pos(int g) const {
    auto it = position.find(g);
    if (it == position.end()) throw std::runtime_error("element not in subgroup");
    return it->second;
}

Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup H;
    H.parent = &G;
    H.elems = std::move(elems);
    for (size_t i = 0; i < H.elems.size(); ++i) H.position[H.elems[i]] = (int)i;
    if (!H.contains(G.identity)) throw std::runtime_error("subgroup must contain the identity");
    for (int a : H.elems) {
        if (!H.contains(G.inv(a))) throw std::runtime_error("subgroup not closed under inverse");
        for (int b : H.elems)
            if (!H.contains(G.mul(a, b))) throw std::runtime_error("subgroup not closed under product");
    }
    return H;
}

Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& gens) {
    std::vector<char> seen(G.n, 0);
    seen[G.identity] = 1;
    std::deque<int> queue{G.identity};
    while (!queue.empty()) {
        int g = queue.front();
        queue.pop_front();
        for (int s : gens) {
            for (int h : {G.mul(g, s), G.mul(g, G.inv(s))})
                if (!seen[h]) {
                    seen[h] = 1;
                    queue.push_back(h);
                }
        }
    }
    std::vector<int> elems;
    for (int g = 0; g < G.n; ++g)
        if (seen[g]) elems.push_back(g);
    return make_subgroup(G, std::move(elems));
}

Subgroup whole_group(const FiniteGroup& G) {
    std::vector<int> all(G.n);
    for (int g = 0; g < G.n; ++g) all[g] = g;
    return make_subgroup(G, std::move(all));
}

std::vector<int> conjugacy_class(const FiniteGroup& G, int g) {
    std::vector<char> seen(G.n, 0);
    std::vector<int> cls;
    for (int x = 0; x < G.n; ++x) {
        int c = G.conjugate(x, g);
        if (!seen[c]) {
            seen[c] = 1;
            cls.push_back(c);
        }
    }
    std::sort(cls.begin(), cls.end());
    // orbit-stabilizer: |class| * |centralizer| = |G|
    int cent = 0;
    for (int x = 0; x < G.n; ++x)
        if (G.mul(x, g) == G.mul(g, x)) ++cent;
    if ((int)cls.size() * cent != G.n)
        throw std::runtime_error("orbit-stabilizer identity fails; corrupt group table");
    return cls;
}

Subgroup centralizer(const FiniteGroup& G, int g) {
    std::vector<int> elems;
    for (int x = 0; x < G.n; ++x)
        if (G.mul(x, g) == G.mul(g, x)) elems.push_back(x);
    Subgroup H = make_subgroup(G, std::move(elems));
    if ((int)conjugacy_class(G, g).size() * H.size() != G.n)
        throw std::runtime_error("orbit-stabilizer identity fails for centralizer");
    return H;
}

Subgroup center(const FiniteGroup& G) {
    std::vector<int> elems;
    for (int z = 0; z < G.n; ++z) {
        bool central = true;
        for (int x = 0; x < G.n && central; ++x) central = G.mul(z, x) == G.mul(x, z);
        if (central) elems.push_back(z);
    }
    return make_subgroup(G, std::move(elems));
}

LinearCharacter make_character(Subgroup domain, std::vector<RootOfUnity> values,
                               scalars::Characteristic ch) {
    if (values.size() != domain.elems.size())
        throw std::runtime_error("character value count mismatch");
    const FiniteGroup& G = *domain.parent;
    LinearCharacter chi{std::move(domain), std::move(values)};
    if (!chi(G.identity).is_one()) throw std::runtime_error("character must map identity to 1");
    for (int a : chi.domain.elems) {
        if (G.element_order[a] % chi(a).order() != 0)
            throw std::runtime_error("character value order does not divide element order");
        if (ch.p != 0 && chi(a).order() % ch.p == 0)
            throw std::runtime_error("character value order divisible by the characteristic");
        for (int b : chi.domain.elems)
            if (!(chi(G.mul(a, b)) == scalars::mul(chi(a), chi(b), ch)))
                throw std::runtime_error("character is not multiplicative");
    }
    return chi;
}

std::vector<LinearCharacter> linear_characters(const Subgroup& H, scalars::Characteristic ch,
                                               size_t cap) {
    const FiniteGroup& G = *H.parent;
    // N = subgroup forced to chi = 1: commutators, plus (in char p) the
    // p-power-order parts h^q with q the p'-part of ord(h).
    std::vector<int> forced;
    for (int a : H.elems)
        for (int b : H.elems) forced.push_back(G.commutator(a, b));
    if (ch.p != 0)
        for (int h : H.elems) {
            long q = G.element_order[h];
            while (q % ch.p == 0) q /= ch.p;
            forced.push_back(G.pow(h, q));
        }
    // Closure inside H.
    std::vector<char> in_n(G.n, 0);
    in_n[G.identity] = 1;
    std::deque<int> queue{G.identity};
    while (!queue.empty()) {
        int g = queue.front();
        queue.pop_front();
        for (int s : forced) {
            int t = G.mul(g, s);
            if (!in_n[t]) {
                in_n[t] = 1;
                queue.push_back(t);
            }
        }
    }

    // Characters as value maps on a growing subgroup S, starting from N.
    struct Partial {
        std::map<int, RootOfUnity> val;
    };
    std::vector<int> S;
    for (int g : H.elems)
        if (in_n[g]) S.push_back(g);
    std::vector<Partial> chars(1);
    for (int g : S) chars[0].val[g] = scalars::one_root();

    std::vector<char> in_s(G.n, 0);
    for (int g : S) in_s[g] = 1;
    while (S.size() < H.elems.size()) {
        int h = -1;
        for (int g : H.elems)
            if (!in_s[g]) {
                h = g;
                break;
            }
        long m = 1;
        int acc = h;
        while (!in_s[acc]) {
            acc = G.mul(acc, h);
            ++m;
        }
        if (chars.size() * m > cap)
            throw std::runtime_error("character count exceeds cap of " + std::to_string(cap));
        std::vector<Partial> next;
        next.reserve(chars.size() * m);
        for (const auto& chi : chars) {
            RootOfUnity w = chi.val.at(acc);  // chi(h^m)
            RootOfUnity base = scalars::zeta(m * w.d, w.k, ch);
            for (long i = 0; i < m; ++i) {
                RootOfUnity v = scalars::mul(base, scalars::zeta(m, i, ch), ch);
                Partial ext = chi;
                RootOfUnity vp = scalars::one_root();
                int hp = G.identity;
                for (long j = 1; j < m; ++j) {
                    vp = scalars::mul(vp, v, ch);
                    hp = G.mul(hp, h);
                    for (int s : S) ext.val[G.mul(s, hp)] = scalars::mul(chi.val.at(s), vp, ch);
                }
                next.push_back(std::move(ext));
            }
        }
        chars = std::move(next);
        std::vector<int> S2;
        for (int g : H.elems) {
            if (in_s[g]) {
                S2.push_back(g);
                continue;
            }
            if (chars[0].val.count(g)) {
                in_s[g] = 1;
                S2.push_back(g);
            }
        }
        S = std::move(S2);
    }

    // Values are multiplicative by the extension recurrence (each step defines
    // chi on the cosets S h^j from chi on S, with commutators already forced
    // to 1). The quadratic make_character check is kept for small domains; on
    // large ones only the linear invariants are re-verified.
    const bool exhaustive = H.elems.size() <= 128;
    std::vector<LinearCharacter> out;
    out.reserve(chars.size());
    for (const auto& chi : chars) {
        std::vector<RootOfUnity> vals(H.elems.size());
        for (size_t i = 0; i < H.elems.size(); ++i) vals[i] = chi.val.at(H.elems[i]);
        if (exhaustive) {
            out.push_back(make_character(H, std::move(vals), ch));
            continue;
        }
        for (size_t i = 0; i < H.elems.size(); ++i) {
            int g = H.elems[i];
            if (g == G.identity && !vals[i].is_one())
                throw std::runtime_error("character is not 1 at the identity");
            if (G.element_order[g] % vals[i].order() != 0)
                throw std::runtime_error("character value order does not divide element order");
        }
        out.push_back(LinearCharacter{H, std::move(vals)});
    }
    return out;
}

LinearCharacter restrict_character(const LinearCharacter& chi, const Subgroup& smaller,
                                   scalars::Characteristic ch) {
    std::vector<RootOfUnity> vals;
    vals.reserve(smaller.elems.size());
    for (int g : smaller.elems) vals.push_back(chi(g));
    return make_character(smaller, std::move(vals), ch);
}


ExtractedGroup as_group(const Subgroup& H) {
    const FiniteGroup& G = *H.parent;
    int m = H.size();
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) table[i][j] = H.pos(G.mul(H.elems[i], H.elems[j]));

    // Every non-identity element doubles as a named generator so that word
    // queries keep working on the extracted group.
    std::vector<std::string> gen_names;
    std::vector<int> gen_elems;
    int id_pos = H.pos(G.identity);
    for (int i = 0; i < m; ++i) {
        if (i == id_pos) continue;
        gen_names.push_back("x" + std::to_string(i));
        gen_elems.push_back(i);
    }
    if (gen_names.empty()) {
        gen_names.push_back("x0");
        gen_elems.push_back(id_pos);
    }

    ExtractedGroup out;
    out.group = make_table_group(std::move(table), id_pos, std::move(gen_names),
                                 std::move(gen_elems));
    out.to_parent = H.elems;
    out.from_parent.assign(G.n, -1);
    for (int i = 0; i < m; ++i) out.from_parent[H.elems[i]] = i;
    return out;
}

}  // namespace groups
