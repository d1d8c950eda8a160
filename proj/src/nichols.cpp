#include "engine/nichols.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace nichols {

using scalars::Characteristic;
using scalars::FieldElement;
using scalars::RootOfUnity;
using scalars::SplittingField;

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

long long checked_mul(long long a, long long b, const char* what) {
    __int128 p = (__int128)a * b;
    require(p <= (__int128)9000000000000000000LL, std::string(what) + ": overflow");
    return (long long)p;
}

}  // namespace

HilbertSeries hs_one(int theta) {
    HilbertSeries s;
    s.theta = theta;
    s.coeff[std::vector<long>((size_t)theta, 0)] = 1;
    return s;
}

HilbertSeries q_number_series(long m) {
    require(m >= 1, "q_number_series: m must be positive");
    HilbertSeries s;
    s.theta = 1;
    for (long k = 0; k < m; ++k) s.coeff[{k}] = 1;
    return s;
}

HilbertSeries hs_mul(const HilbertSeries& a, const HilbertSeries& b) {
    require(a.theta == b.theta, "hs_mul: variable counts differ");
    HilbertSeries s;
    s.theta = a.theta;
    if (a.truncated_at && b.truncated_at)
        s.truncated_at = std::min(*a.truncated_at, *b.truncated_at);
    else if (a.truncated_at)
        s.truncated_at = a.truncated_at;
    else if (b.truncated_at)
        s.truncated_at = b.truncated_at;
    for (const auto& [ea, ca] : a.coeff)
        for (const auto& [eb, cb] : b.coeff) {
            std::vector<long> e((size_t)s.theta);
            long total = 0;
            for (int i = 0; i < s.theta; ++i) {
                e[(size_t)i] = ea[(size_t)i] + eb[(size_t)i];
                total += e[(size_t)i];
            }
            if (s.truncated_at && total > *s.truncated_at) continue;
            long long& slot = s.coeff[e];
            slot += checked_mul(ca, cb, "hs_mul");
            require(slot >= 0, "hs_mul: negative coefficient");
        }
    return s;
}

HilbertSeries hs_substitute(const HilbertSeries& s, const std::vector<long>& beta) {
    require(s.theta == 1, "hs_substitute: series must have one variable");
    HilbertSeries out;
    out.theta = (int)beta.size();
    for (const auto& [e, c] : s.coeff) {
        std::vector<long> exp(beta.size());
        for (size_t i = 0; i < beta.size(); ++i) exp[i] = beta[i] * e[0];
        out.coeff[exp] += c;
    }
    return out;
}

std::vector<long long> collapse_total_degree(const HilbertSeries& s, long max_degree) {
    std::vector<long long> out((size_t)max_degree + 1, 0);
    for (const auto& [e, c] : s.coeff) {
        long total = std::accumulate(e.begin(), e.end(), 0L);
        if (total <= max_degree) out[(size_t)total] += c;
    }
    return out;
}

long long evaluate_at_one(const HilbertSeries& s) {
    require(!s.truncated_at, "evaluate_at_one: series is truncated");
    long long v = 0;
    for (const auto& [e, c] : s.coeff) v += c;
    return v;
}

std::string to_string(const HilbertSeries& s) {
    std::string out;
    for (const auto& [e, c] : s.coeff) {
        for (size_t i = 0; i < e.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(e[i]);
        }
        out += " : " + std::to_string(c) + "\n";
    }
    return out;
}

std::string factor_string(long long n) {
    require(n >= 1, "factor_string: positive input required");
    if (n == 1) return "1";
    std::string out;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) {
            if (!out.empty()) out += " * ";
            out += std::to_string(p);
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    if (n > 1) {
        if (!out.empty()) out += " * ";
        out += std::to_string(n);
    }
    return out;
}

namespace {

long module_conductor(const ydmod::YDModule& V, Characteristic ch) {
    long c = ch.p == 2 ? 1 : 2;
    for (const auto& row : V.act_scal)
        for (const auto& r : row) c = scalars::lcm_long(c, r.order());
    return c;
}

// Positive braid lifts of all permutations, as monomial maps on words.
struct BraidLifts {
    long words = 0;
    // tperm[w][u], tscal[w][u]: image word and scalar of basis word u under T_w
    std::vector<std::vector<int>> tperm;
    std::vector<std::vector<RootOfUnity>> tscal;
    std::vector<std::vector<int>> perms;  // the permutation each row lifts
};

BraidLifts build_lifts(const ydmod::YDModule& V, int n, Characteristic ch,
                       bool scan_descending) {
    int d = V.dim;
    long words = 1;
    for (int k = 0; k < n; ++k) {
        words *= d;
        require(words <= 200000, "symmetrizer_graded_dim: tensor power exceeds the budget");
    }
    long long nfact = 1;
    for (int k = 2; k <= n; ++k) nfact *= k;
    require(nfact * words <= 4000000,
            "symmetrizer_graded_dim: lift table exceeds the budget");

    // adjacent braiding as arrays over words, one per tensor position
    ydmod::MonomialOp c = ydmod::braiding(V, V);
    std::vector<long> stride((size_t)n, 1);
    for (int k = n - 2; k >= 0; --k) stride[(size_t)k] = stride[(size_t)k + 1] * d;
    std::vector<std::vector<int>> bperm((size_t)n - 1, std::vector<int>((size_t)words));
    std::vector<std::vector<RootOfUnity>> bscal((size_t)n - 1,
                                                std::vector<RootOfUnity>((size_t)words));
    for (int i = 0; i + 1 < n; ++i)
        for (long u = 0; u < words; ++u) {
            int a = (int)(u / stride[(size_t)i] % d);
            int b = (int)(u / stride[(size_t)i + 1] % d);
            int out = c.perm[(size_t)(a * d + b)];
            int a2 = out / d, b2 = out % d;
            bperm[(size_t)i][(size_t)u] =
                (int)(u + (a2 - a) * stride[(size_t)i] + (b2 - b) * stride[(size_t)i + 1]);
            bscal[(size_t)i][(size_t)u] = c.scal[(size_t)(a * d + b)];
        }

    BraidLifts L;
    L.words = words;
    std::map<std::vector<int>, int> index;
    std::vector<int> id((size_t)n);
    std::iota(id.begin(), id.end(), 0);
    index[id] = 0;
    L.perms.push_back(id);
    L.tperm.emplace_back((size_t)words);
    std::iota(L.tperm[0].begin(), L.tperm[0].end(), 0);
    L.tscal.emplace_back((size_t)words, scalars::one_root());
    for (size_t q = 0; q < L.perms.size(); ++q) {
        std::vector<int> w = L.perms[q];
        for (int step = 0; step + 1 < n; ++step) {
            int i = scan_descending ? n - 2 - step : step;
            std::vector<int> child((size_t)n);
            for (int x = 0; x < n; ++x) {
                int v = w[(size_t)x];
                child[(size_t)x] = v == i ? i + 1 : v == i + 1 ? i : v;
            }
            if (index.count(child)) continue;
            index[child] = (int)L.perms.size();
            L.perms.push_back(child);
            std::vector<int> tp((size_t)words);
            std::vector<RootOfUnity> ts((size_t)words);
            for (long u = 0; u < words; ++u) {
                int mid = L.tperm[q][(size_t)u];
                tp[(size_t)u] = bperm[(size_t)i][(size_t)mid];
                ts[(size_t)u] =
                    scalars::mul(L.tscal[q][(size_t)u], bscal[(size_t)i][(size_t)mid], ch);
            }
            L.tperm.push_back(std::move(tp));
            L.tscal.push_back(std::move(ts));
        }
    }
    require((long long)L.perms.size() == nfact, "build_lifts: symmetric group not exhausted");
    return L;
}

long long field_rank(std::vector<std::vector<FieldElement>> cols, const SplittingField& F) {
    long long rank = 0;
    std::vector<std::pair<size_t, std::vector<FieldElement>>> pivots;
    for (auto& col : cols) {
        for (const auto& [p, row] : pivots) {
            if (col[p].is_zero()) continue;
            FieldElement f = col[p];
            for (size_t k = 0; k < col.size(); ++k)
                col[k] = scalars::sub(col[k], scalars::mul(f, row[k]));
        }
        size_t lead = col.size();
        for (size_t k = 0; k < col.size(); ++k)
            if (!col[k].is_zero()) {
                lead = k;
                break;
            }
        if (lead == col.size()) continue;
        FieldElement inv = scalars::inverse(col[lead]);
        for (size_t k = 0; k < col.size(); ++k) col[k] = scalars::mul(col[k], inv);
        pivots.emplace_back(lead, col);
        ++rank;
        (void)F;
    }
    return rank;
}

}  // namespace

long long symmetrizer_graded_dim(const ydmod::YDModule& V, int n, Characteristic ch,
                                 long conductor) {
    require(n >= 0, "symmetrizer_graded_dim: negative degree");
    require(V.monomial, "symmetrizer_graded_dim: unsupported module shape (matrix-backed)");
    if (n == 0) return 1;
    if (V.dim == 0) return 0;
    if (n == 1) return V.dim;
    if (conductor == 0) conductor = module_conductor(V, ch);
    require(conductor <= 36, "symmetrizer_graded_dim: conductor exceeds the cap");
    SplittingField F(ch, conductor);

    BraidLifts L = build_lifts(V, n, ch, false);
    if (n <= 4) {
        // the lift is independent of the reduced-word convention
        BraidLifts R = build_lifts(V, n, ch, true);
        std::map<std::vector<int>, int> rindex;
        for (size_t q = 0; q < R.perms.size(); ++q) rindex[R.perms[q]] = (int)q;
        for (size_t q = 0; q < L.perms.size(); ++q) {
            int rq = rindex.at(L.perms[q]);
            require(L.tperm[q] == R.tperm[(size_t)rq] && L.tscal[q] == R.tscal[(size_t)rq],
                    "symmetrizer_graded_dim: braid lift depends on the word convention");
        }
    }

    // braid-orbit blocks
    long words = L.words;
    std::vector<long> parent((size_t)words);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<long(long)> find = [&](long a) {
        while (parent[(size_t)a] != a) a = parent[(size_t)a] = parent[(size_t)parent[(size_t)a]];
        return a;
    };
    for (size_t q = 0; q < L.perms.size(); ++q)
        for (long u = 0; u < words; ++u) {
            long a = find(u), b = find(L.tperm[q][(size_t)u]);
            if (a != b) parent[(size_t)a] = b;
        }
    std::map<long, std::vector<long>> blocks;
    for (long u = 0; u < words; ++u) blocks[find(u)].push_back(u);

    long long rank = 0;
    for (const auto& [_, block] : blocks) {
        std::map<long, size_t> local;
        for (size_t k = 0; k < block.size(); ++k) local[block[k]] = k;
        std::vector<std::vector<FieldElement>> cols;
        for (long u : block) {
            std::vector<FieldElement> col(block.size(), scalars::fe_zero(F));
            for (size_t q = 0; q < L.perms.size(); ++q) {
                size_t row = local.at(L.tperm[q][(size_t)u]);
                col[row] = scalars::add(col[row],
                                        scalars::embed(L.tscal[q][(size_t)u], F));
            }
            cols.push_back(std::move(col));
        }
        rank += field_rank(std::move(cols), F);
    }
    return rank;
}

namespace {

std::optional<HilbertSeries> rank_one_opt(const ydmod::YDModule& V, Characteristic ch,
                                          int max_degree) {
    require(V.dim >= 1 && V.dim <= 4, "rank_one_hilbert: dimension outside 1..4");
    if (V.dim == 1) {
        RootOfUnity q = V.act_scal[(size_t)V.deg[0]][0];
        auto h = scalars::height(q, ch);
        if (!h) return std::nullopt;
        HilbertSeries s = q_number_series(*h);
        if (*h <= 8) {
            for (long k = 0; k <= *h; ++k)
                require(symmetrizer_graded_dim(V, (int)k, ch) == (k < *h ? 1 : 0),
                        "rank_one_hilbert: closed form disagrees with the symmetrizer");
        }
        return s;
    }
    HilbertSeries s;
    s.theta = 1;
    for (int k = 0; k <= max_degree; ++k) {
        long long dk = symmetrizer_graded_dim(V, k, ch);
        if (dk == 0) return s;
        s.coeff[{(long)k}] = dk;
    }
    return std::nullopt;
}

}  // namespace

HilbertSeries rank_one_hilbert(const ydmod::YDModule& V, Characteristic ch, int max_degree) {
    auto s = rank_one_opt(V, ch, max_degree);
    require(s.has_value(),
            "rank_one_hilbert: no vanishing component within the degree bound "
            "(infinite-dimensional candidate)");
    return *s;
}

ydmod::YDModule direct_sum(const std::vector<ydmod::YDModule>& mods) {
    require(!mods.empty(), "direct_sum: empty input");
    const groups::FiniteGroup& G = *mods[0].G;
    int total = 0;
    for (const auto& m : mods) {
        require(m.G == mods[0].G, "direct_sum: modules over different groups");
        require(m.monomial, "direct_sum: unsupported module shape (matrix-backed)");
        total += m.dim;
    }
    std::vector<int> deg;
    std::vector<std::vector<int>> perm((size_t)G.n);
    std::vector<std::vector<RootOfUnity>> scal((size_t)G.n);
    for (const auto& m : mods) {
        int offset = (int)deg.size();
        for (int b = 0; b < m.dim; ++b) deg.push_back(m.deg[(size_t)b]);
        for (int g = 0; g < G.n; ++g)
            for (int b = 0; b < m.dim; ++b) {
                perm[(size_t)g].push_back(m.act_perm[(size_t)g][(size_t)b] + offset);
                scal[(size_t)g].push_back(m.act_scal[(size_t)g][(size_t)b]);
            }
    }
    (void)total;
    return ydmod::make_module(G, deg, perm, scal);
}

std::vector<RootModuleData> root_module_series(const ydmod::YDTuple& M,
                                               const cartan::SemiCartanGraph& C,
                                               const HilbertCaps& caps) {
    require(!C.objects.empty() && C.objects[0].fingerprint == ydmod::iso_fingerprint(M),
            "root_module_series: graph was not explored from this tuple");
    require(C.is_finite && C.is_cartan_graph,
            "root_module_series: graph is not a finite Cartan graph");
    std::vector<int> word = cartan::longest_word(C, 0);
    std::vector<cartan::Root> betas = cartan::beta_sequence(C, 0, word);
    std::vector<RootModuleData> out;
    ydmod::YDTuple cur = M;
    for (size_t m = 0; m < word.size(); ++m) {
        int i = word[m];
        const ydmod::YDModule& module = cur.modules[(size_t)i];
        RootModuleData data;
        data.beta = betas[m];
        data.dim = module.dim;
        try {
            data.series = rank_one_hilbert(module, M.ch, caps.max_degree);
        } catch (const std::exception& e) {
            std::string b;
            for (size_t k = 0; k < betas[m].size(); ++k) {
                if (k) b += ' ';
                b += std::to_string(betas[m][k]);
            }
            throw std::runtime_error("root module at beta (" + b + ") failed: " + e.what());
        }
        out.push_back(std::move(data));
        if (m + 1 < word.size()) cur = ydmod::reflect(cur, i, caps.adjoint_cap);
    }
    return out;
}

HilbertSeries hilbert_series(const ydmod::YDTuple& M, const cartan::SemiCartanGraph& C,
                             const HilbertCaps& caps) {
    std::vector<RootModuleData> roots = root_module_series(M, C, caps);
    HilbertSeries out = hs_one(C.theta);
    for (const auto& r : roots) out = hs_mul(out, hs_substitute(r.series, r.beta));
    return out;
}

DimensionResult nichols_dimension(const ydmod::YDTuple& M, const cartan::SemiCartanGraph& C,
                                  const HilbertCaps& caps) {
    DimensionResult res;
    std::vector<RootModuleData> roots;
    try {
        roots = root_module_series(M, C, caps);
    } catch (const std::exception& e) {
        if (std::string(e.what()).find("infinite-dimensional candidate") != std::string::npos) {
            res.finite = false;
            res.factored = "infinite";
            return res;
        }
        throw;
    }
    long long value = 1;
    for (const auto& r : roots)
        value = checked_mul(value, evaluate_at_one(r.series), "nichols_dimension");
    res.finite = true;
    res.value = value;
    res.factored = factor_string(value);
    return res;
}

CrosscheckReport hilbert_oracle_crosscheck(const ydmod::YDTuple& M,
                                           const cartan::SemiCartanGraph& C,
                                           long total_degree, const HilbertCaps& caps) {
    CrosscheckReport rep;
    HilbertSeries product = hilbert_series(M, C, caps);
    rep.product_dims = collapse_total_degree(product, total_degree);
    ydmod::YDModule sum = direct_sum(M.modules);
    for (long n = 0; n <= total_degree; ++n)
        rep.oracle_dims.push_back(
            symmetrizer_graded_dim(sum, (int)n, M.ch, caps.conductor));
    rep.match = rep.product_dims == rep.oracle_dims;
    return rep;
}

}  // namespace nichols
