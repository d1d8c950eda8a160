#include "engine/cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cartan {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

int dim_of(const Matrix& a) { return (int)a.size(); }

// Exact determinant by fraction-free elimination.  Entries stay small
// because every matrix here has rank at most nine.
long long det_ll(std::vector<std::vector<long long>> m) {
    int n = (int)m.size();
    if (n == 0) return 1;
    long long prev = 1;
    long long sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[(size_t)k][(size_t)k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[(size_t)r][(size_t)k] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[(size_t)k], m[(size_t)swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[(size_t)i][(size_t)j] =
                    (m[(size_t)i][(size_t)j] * m[(size_t)k][(size_t)k] -
                     m[(size_t)i][(size_t)k] * m[(size_t)k][(size_t)j]) /
                    prev;
        prev = m[(size_t)k][(size_t)k];
    }
    return sign * m[(size_t)n - 1][(size_t)n - 1];
}

long long principal_minor(const std::vector<std::vector<long long>>& m,
                          const std::vector<int>& idx) {
    std::vector<std::vector<long long>> sub(idx.size(),
                                            std::vector<long long>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j)
            sub[i][j] = m[(size_t)idx[i]][(size_t)idx[j]];
    return det_ll(sub);
}

int rank_ll(std::vector<std::vector<long long>> m) {
    int n = (int)m.size();
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (m[(size_t)r][(size_t)col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[(size_t)rank], m[(size_t)pivot]);
        for (int r = rank + 1; r < n; ++r) {
            long long f = m[(size_t)r][(size_t)col];
            long long p = m[(size_t)rank][(size_t)col];
            long long g = std::gcd(f, p);
            if (g == 0) continue;
            long long fr = f / g, pr = p / g;
            for (int c = 0; c < n; ++c)
                m[(size_t)r][(size_t)c] =
                    m[(size_t)r][(size_t)c] * pr - m[(size_t)rank][(size_t)c] * fr;
        }
        ++rank;
    }
    return rank;
}

// Positive integer symmetrizer d with d_i a_ij = d_j a_ji, when one exists.
std::optional<std::vector<long long>> integer_symmetrizer(const Matrix& a) {
    int n = dim_of(a);
    std::vector<long long> num((size_t)n, 0), den((size_t)n, 1);
    num[0] = 1;
    std::vector<int> todo = {0};
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < n; ++j) {
            if (a[(size_t)i][(size_t)j] == 0 || i == j) continue;
            // d_j = d_i * a_ij / a_ji
            long long nn = num[(size_t)i] * a[(size_t)i][(size_t)j];
            long long dd = den[(size_t)i] * a[(size_t)j][(size_t)i];
            if (dd < 0) {
                nn = -nn;
                dd = -dd;
            }
            long long g = std::gcd(nn < 0 ? -nn : nn, dd);
            if (g > 1) {
                nn /= g;
                dd /= g;
            }
            if (num[(size_t)j] == 0) {
                num[(size_t)j] = nn;
                den[(size_t)j] = dd;
                todo.push_back(j);
            } else if (num[(size_t)j] * dd != nn * den[(size_t)j]) {
                return std::nullopt;
            }
        }
    }
    long long L = 1;
    for (int i = 0; i < n; ++i) L = std::lcm(L, den[(size_t)i]);
    std::vector<long long> d((size_t)n);
    for (int i = 0; i < n; ++i) {
        require(num[(size_t)i] > 0, "integer_symmetrizer: disconnected input");
        d[(size_t)i] = num[(size_t)i] * (L / den[(size_t)i]);
    }
    return d;
}

std::vector<int> range_vec(int n) {
    std::vector<int> v((size_t)n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Kac trichotomy through all principal minors: finite iff all positive,
// affine iff the full determinant vanishes and all proper ones are positive.
GCMType trichotomy_by_minors(const std::vector<std::vector<long long>>& m,
                             bool check_psd_corank) {
    int n = (int)m.size();
    bool all_proper_positive = true;
    bool all_nonneg = true;
    std::vector<int> idx;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        idx.clear();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        if ((int)idx.size() == n) continue;
        long long d = principal_minor(m, idx);
        if (d <= 0) all_proper_positive = false;
        if (d < 0) all_nonneg = false;
    }
    long long full = principal_minor(m, range_vec(n));
    if (full > 0 && all_proper_positive) return GCMType::Fin;
    if (check_psd_corank) {
        if (full == 0 && all_nonneg && rank_ll(m) == n - 1) return GCMType::Aff;
    } else {
        if (full == 0 && all_proper_positive) return GCMType::Aff;
    }
    return GCMType::Ind;
}

Matrix mat_mul(const Matrix& x, const Matrix& y) {
    int n = dim_of(x);
    Matrix z((size_t)n, std::vector<long>((size_t)n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long v = x[(size_t)i][(size_t)k];
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) z[(size_t)i][(size_t)j] += v * y[(size_t)k][(size_t)j];
        }
    return z;
}

Matrix identity_matrix(int n) {
    Matrix m((size_t)n, std::vector<long>((size_t)n, 0));
    for (int i = 0; i < n; ++i) m[(size_t)i][(size_t)i] = 1;
    return m;
}

Root apply_matrix(const Matrix& m, const Root& v) {
    int n = dim_of(m);
    Root w((size_t)n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[(size_t)i] += m[(size_t)i][(size_t)j] * v[(size_t)j];
    return w;
}

bool is_positive_root(const Root& v) {
    bool nonzero = false;
    for (long c : v) {
        if (c < 0) return false;
        if (c > 0) nonzero = true;
    }
    return nonzero;
}

bool is_negative_root(const Root& v) {
    bool nonzero = false;
    for (long c : v) {
        if (c > 0) return false;
        if (c < 0) nonzero = true;
    }
    return nonzero;
}

Matrix permuted(const Matrix& a, const std::vector<int>& p) {
    int n = dim_of(a);
    Matrix b((size_t)n, std::vector<long>((size_t)n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[(size_t)p[(size_t)i]][(size_t)p[(size_t)j]] = a[(size_t)i][(size_t)j];
    return b;
}

Matrix chain_matrix(int n) {
    Matrix a = identity_matrix(n);
    for (int i = 0; i < n; ++i) a[(size_t)i][(size_t)i] = 2;
    for (int i = 0; i + 1 < n; ++i) {
        a[(size_t)i][(size_t)i + 1] = -1;
        a[(size_t)i + 1][(size_t)i] = -1;
    }
    return a;
}

std::vector<std::pair<FiniteTypeName, Matrix>> finite_candidates(int n) {
    std::vector<std::pair<FiniteTypeName, Matrix>> out;
    out.push_back({{'A', n}, chain_matrix(n)});
    if (n >= 2) {
        Matrix b = chain_matrix(n);
        b[(size_t)n - 1][(size_t)n - 2] = -2;
        out.push_back({{'B', n}, b});
    }
    if (n >= 3) {
        Matrix c = chain_matrix(n);
        c[(size_t)n - 2][(size_t)n - 1] = -2;
        out.push_back({{'C', n}, c});
    }
    if (n >= 4) {
        Matrix d = chain_matrix(n - 1);
        for (auto& row : d) row.push_back(0);
        d.push_back(std::vector<long>((size_t)n, 0));
        d[(size_t)n - 1][(size_t)n - 1] = 2;
        d[(size_t)n - 2][(size_t)n - 1] = 0;
        d[(size_t)n - 1][(size_t)n - 2] = 0;
        d[(size_t)n - 3][(size_t)n - 1] = -1;
        d[(size_t)n - 1][(size_t)n - 3] = -1;
        out.push_back({{'D', n}, d});
    }
    if (n >= 6 && n <= 8) {
        Matrix e = chain_matrix(n - 1);
        for (auto& row : e) row.push_back(0);
        e.push_back(std::vector<long>((size_t)n, 0));
        e[(size_t)n - 1][(size_t)n - 1] = 2;
        e[2][(size_t)n - 1] = -1;
        e[(size_t)n - 1][2] = -1;
        out.push_back({{'E', n}, e});
    }
    if (n == 4) {
        Matrix f = chain_matrix(4);
        f[2][1] = -2;
        out.push_back({{'F', 4}, f});
    }
    if (n == 2) {
        Matrix g = chain_matrix(2);
        g[1][0] = -3;
        out.push_back({{'G', 2}, g});
    }
    return out;
}

bool matches_up_to_permutation(const Matrix& a, const Matrix& target) {
    int n = dim_of(a);
    std::vector<int> p = range_vec(n);
    do {
        if (permuted(a, p) == target) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

}  // namespace

void check_gcm(const Matrix& a) {
    int n = dim_of(a);
    require(n >= 1, "check_gcm: empty matrix");
    for (int i = 0; i < n; ++i) {
        require((int)a[(size_t)i].size() == n, "check_gcm: matrix is not square");
        require(a[(size_t)i][(size_t)i] == 2, "check_gcm: diagonal entry is not 2");
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            require(a[(size_t)i][(size_t)j] <= 0, "check_gcm: positive off-diagonal entry");
            require((a[(size_t)i][(size_t)j] == 0) == (a[(size_t)j][(size_t)i] == 0),
                    "check_gcm: zero pattern is not symmetric");
        }
    }
}

bool is_indecomposable(const Matrix& a) {
    check_gcm(a);
    int n = dim_of(a);
    std::vector<char> seen((size_t)n, 0);
    std::vector<int> todo = {0};
    seen[0] = 1;
    int count = 1;
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < n; ++j)
            if (!seen[(size_t)j] && a[(size_t)i][(size_t)j] != 0) {
                seen[(size_t)j] = 1;
                ++count;
                todo.push_back(j);
            }
    }
    return count == n;
}

std::string to_string(GCMType t) {
    switch (t) {
        case GCMType::Fin: return "Fin";
        case GCMType::Aff: return "Aff";
        default: return "Ind";
    }
}

GCMType classify_gcm(const Matrix& a) {
    require(is_indecomposable(a), "classify_gcm: matrix is decomposable");
    int n = dim_of(a);
    auto d = integer_symmetrizer(a);
    std::vector<std::vector<long long>> m((size_t)n, std::vector<long long>((size_t)n));
    if (d) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[(size_t)i][(size_t)j] = (*d)[(size_t)i] * a[(size_t)i][(size_t)j];
        return trichotomy_by_minors(m, true);
    }
    // non-symmetrizable: the minor trichotomy applied to the matrix itself
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[(size_t)i][(size_t)j] = a[(size_t)i][(size_t)j];
    return trichotomy_by_minors(m, false);
}

std::string FiniteTypeName::to_string() const {
    return std::string(1, family) + std::to_string(rank);
}

std::optional<FiniteTypeName> finite_type_name(const Matrix& a) {
    if (!is_indecomposable(a)) return std::nullopt;
    int n = dim_of(a);
    require(n <= 8, "finite_type_name: rank above the supported limit");
    if (classify_gcm(a) != GCMType::Fin) return std::nullopt;
    for (const auto& [name, target] : finite_candidates(n))
        if (matches_up_to_permutation(a, target)) return name;
    return std::nullopt;
}

bool is_finite_type(const Matrix& a) {
    check_gcm(a);
    int n = dim_of(a);
    std::vector<int> comp((size_t)n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[(size_t)s] >= 0) continue;
        std::vector<int> todo = {s};
        comp[(size_t)s] = ncomp;
        while (!todo.empty()) {
            int i = todo.back();
            todo.pop_back();
            for (int j = 0; j < n; ++j)
                if (comp[(size_t)j] < 0 && a[(size_t)i][(size_t)j] != 0) {
                    comp[(size_t)j] = ncomp;
                    todo.push_back(j);
                }
        }
        ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (comp[(size_t)i] == c) idx.push_back(i);
        Matrix sub(idx.size(), std::vector<long>(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                sub[i][j] = a[(size_t)idx[i]][(size_t)idx[j]];
        if (classify_gcm(sub) != GCMType::Fin) return false;
    }
    return true;
}

Matrix simple_reflection_matrix(const Matrix& a, int i) {
    check_gcm(a);
    int n = dim_of(a);
    require(i >= 0 && i < n, "simple_reflection_matrix: index out of range");
    Matrix s = identity_matrix(n);
    for (int j = 0; j < n; ++j) s[(size_t)i][(size_t)j] -= a[(size_t)i][(size_t)j];
    require(mat_mul(s, s) == identity_matrix(n), "simple_reflection_matrix: not an involution");
    return s;
}

std::vector<Root> SemiCartanGraph::positive_roots(int obj) const {
    std::vector<Root> out;
    for (const Root& v : roots[(size_t)obj])
        if (is_positive_root(v)) out.push_back(v);
    return out;
}

namespace {

// Root closure and axiom verification shared by both explore overloads.
void finish_graph(SemiCartanGraph& G, const ExploreCaps& caps) {
    int theta = G.theta;
    size_t nobj = G.objects.size();
    G.is_standard = true;
    for (const auto& obj : G.objects)
        if (obj.cartan != G.objects[0].cartan) G.is_standard = false;
    if (!G.complete) return;
    G.indecomposable = is_indecomposable(G.objects[0].cartan);

    // semi-Cartan axioms: involutive edges sharing row i across each edge
    for (size_t x = 0; x < nobj; ++x)
        for (int i = 0; i < theta; ++i) {
            int y = G.objects[x].edges[(size_t)i];
            if (G.objects[(size_t)y].edges[(size_t)i] != (int)x)
                G.diagnostics.push_back("reflection " + std::to_string(i) +
                                        " is not involutive at object " + std::to_string(x));
            else if (G.objects[(size_t)y].cartan[(size_t)i] != G.objects[x].cartan[(size_t)i])
                G.diagnostics.push_back("row " + std::to_string(i) +
                                        " changes across the reflection at object " +
                                        std::to_string(x));
        }
    if (!G.diagnostics.empty()) return;

    // root closure: push every root across every edge until stable
    std::vector<std::set<Root>> rs(nobj);
    for (size_t x = 0; x < nobj; ++x)
        for (int i = 0; i < theta; ++i) {
            Root v((size_t)theta, 0);
            v[(size_t)i] = 1;
            rs[x].insert(v);
        }
    bool changed = true;
    bool capped = false;
    while (changed && !capped) {
        changed = false;
        for (size_t x = 0; x < nobj && !capped; ++x)
            for (int i = 0; i < theta && !capped; ++i) {
                int y = G.objects[x].edges[(size_t)i];
                Matrix s = simple_reflection_matrix(G.objects[x].cartan, i);
                for (const Root& v : rs[x]) {
                    Root w = apply_matrix(s, v);
                    if (rs[(size_t)y].insert(w).second) {
                        changed = true;
                        if ((long)rs[(size_t)y].size() > caps.max_roots) {
                            capped = true;
                            break;
                        }
                    }
                }
            }
    }
    G.roots.assign(nobj, {});
    for (size_t x = 0; x < nobj; ++x)
        G.roots[x] = std::vector<Root>(rs[x].begin(), rs[x].end());
    if (capped) {
        G.diagnostics.push_back("root closure exceeded the cap; finiteness undecided");
        G.is_finite = false;
        return;
    }
    G.is_finite = true;

    // root-system axioms on the closed finite system
    bool ok = true;
    for (size_t x = 0; x < nobj && ok; ++x) {
        for (const Root& v : G.roots[x])
            if (!is_positive_root(v) && !is_negative_root(v)) {
                G.diagnostics.push_back("mixed-sign root at object " + std::to_string(x));
                ok = false;
                break;
            }
        for (const Root& v : G.roots[x]) {
            int support = 0, unit = -1;
            for (int i = 0; i < theta; ++i)
                if (v[(size_t)i] != 0) {
                    ++support;
                    unit = i;
                }
            if (support == 1 && std::abs(v[(size_t)unit]) != 1) {
                G.diagnostics.push_back("root multiple of a simple root at object " +
                                        std::to_string(x));
                ok = false;
                break;
            }
        }
        for (int i = 0; i < theta && ok; ++i) {
            int y = G.objects[x].edges[(size_t)i];
            if (G.roots[x].size() != G.roots[(size_t)y].size()) {
                G.diagnostics.push_back("root counts differ across reflection " +
                                        std::to_string(i) + " at object " + std::to_string(x));
                ok = false;
            }
        }
    }
    // exchange axiom: (r_i r_j)^{t_ij}(X) = X with t_ij the count of
    // positive roots supported on the i,j plane
    for (size_t x = 0; x < nobj && ok; ++x)
        for (int i = 0; i < theta && ok; ++i)
            for (int j = i + 1; j < theta && ok; ++j) {
                long t = 0;
                for (const Root& v : G.roots[x]) {
                    if (!is_positive_root(v)) continue;
                    bool planar = true;
                    for (int k = 0; k < theta; ++k)
                        if (k != i && k != j && v[(size_t)k] != 0) planar = false;
                    if (planar) ++t;
                }
                int cur = (int)x;
                for (long step = 0; step < t; ++step) {
                    cur = G.objects[(size_t)cur].edges[(size_t)j];
                    cur = G.objects[(size_t)cur].edges[(size_t)i];
                }
                if (cur != (int)x) {
                    G.diagnostics.push_back("exchange axiom fails at object " +
                                            std::to_string(x) + " for the pair (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
                    ok = false;
                }
            }
    G.is_cartan_graph = ok && G.admits_all_reflections;
}

}  // namespace

SemiCartanGraph explore(const ydmod::YDTuple& seed, const ExploreCaps& caps) {
    int theta = (int)seed.modules.size();
    require(theta >= 1, "explore: empty tuple");
    SemiCartanGraph G;
    G.theta = theta;
    G.admits_all_reflections = true;
    std::map<std::string, int> ids;
    std::vector<ydmod::YDTuple> tuples;
    auto add_object = [&](const ydmod::YDTuple& T) {
        std::string fp = ydmod::iso_fingerprint(T);
        auto it = ids.find(fp);
        if (it != ids.end()) return it->second;
        int id = (int)G.objects.size();
        GraphObject obj;
        obj.fingerprint = fp;
        obj.edges.assign((size_t)theta, -1);
        obj.tuple = T;
        G.objects.push_back(std::move(obj));
        tuples.push_back(T);
        ids.emplace(std::move(fp), id);
        return id;
    };
    add_object(seed);
    bool ok = true;
    for (size_t q = 0; q < tuples.size() && ok; ++q) {
        ydmod::YDTuple T = tuples[q];
        ydmod::CartanMatrixResult A = ydmod::cartan_matrix(T, caps.adjoint_cap);
        if (!A.complete) {
            G.admits_all_reflections = false;
            G.diagnostics.push_back("adjoint powers exceed the cap at object " +
                                    std::to_string(q));
            ok = false;
            break;
        }
        Matrix M((size_t)theta, std::vector<long>((size_t)theta));
        for (int i = 0; i < theta; ++i)
            for (int j = 0; j < theta; ++j) M[(size_t)i][(size_t)j] = A.A[(size_t)i][(size_t)j];
        G.objects[q].cartan = M;
        for (int i = 0; i < theta && ok; ++i) {
            ydmod::YDTuple R;
            try {
                R = ydmod::reflect(T, i, caps.adjoint_cap);
            } catch (const std::exception& e) {
                G.admits_all_reflections = false;
                G.diagnostics.push_back("reflection " + std::to_string(i) + " fails at object " +
                                        std::to_string(q) + ": " + e.what());
                ok = false;
                break;
            }
            if ((int)G.objects.size() >= caps.max_objects &&
                ids.find(ydmod::iso_fingerprint(R)) == ids.end()) {
                G.diagnostics.push_back("object cap reached; closure undecided");
                ok = false;
                break;
            }
            G.objects[q].edges[(size_t)i] = add_object(R);
        }
    }
    G.complete = ok;
    finish_graph(G, caps);
    return G;
}

SemiCartanGraph explore(const AbstractSeed& seed, const ExploreCaps& caps) {
    int theta = seed.theta;
    require(theta >= 1, "explore: empty seed");
    size_t nobj = seed.matrices.size();
    require(nobj >= 1 && seed.reflections.size() == nobj,
            "explore: matrices and reflections disagree");
    SemiCartanGraph G;
    G.theta = theta;
    G.admits_all_reflections = true;
    for (size_t x = 0; x < nobj; ++x) {
        check_gcm(seed.matrices[x]);
        require(dim_of(seed.matrices[x]) == theta, "explore: matrix rank mismatch");
        require((int)seed.reflections[x].size() == theta, "explore: reflection row mismatch");
        for (int i = 0; i < theta; ++i) {
            int y = seed.reflections[x][(size_t)i];
            require(y >= 0 && (size_t)y < nobj, "explore: reflection target out of range");
        }
        GraphObject obj;
        obj.fingerprint = "abstract:" + std::to_string(x);
        obj.cartan = seed.matrices[x];
        std::vector<int> edges(seed.reflections[x].begin(), seed.reflections[x].end());
        obj.edges = edges;
        G.objects.push_back(std::move(obj));
    }
    G.complete = true;
    finish_graph(G, caps);
    return G;
}

int finite_type_witness(const SemiCartanGraph& C) {
    require(C.complete && C.is_finite && C.is_cartan_graph && C.indecomposable,
            "finite_type_witness: hypotheses unverified");
    for (size_t x = 0; x < C.objects.size(); ++x)
        if (classify_gcm(C.objects[x].cartan) == GCMType::Fin) return (int)x;
    throw std::runtime_error(
        "finite_type_witness: no finite-type object; this falsifies the expected "
        "trichotomy for finite Cartan graphs");
}

std::vector<int> longest_word(const SemiCartanGraph& C, int obj) {
    require(C.is_finite && C.is_cartan_graph, "longest_word: graph is not a finite Cartan graph");
    int theta = C.theta;
    Matrix W = identity_matrix(theta);
    int cur = obj;
    std::vector<int> word;
    for (;;) {
        int found = -1;
        for (int i = 0; i < theta; ++i) {
            Root v((size_t)theta);
            for (int r = 0; r < theta; ++r) v[(size_t)r] = W[(size_t)r][(size_t)i];
            if (is_positive_root(v)) {
                found = i;
                break;
            }
        }
        if (found < 0) break;
        word.push_back(found);
        W = mat_mul(W, simple_reflection_matrix(C.objects[(size_t)cur].cartan, found));
        cur = C.objects[(size_t)cur].edges[(size_t)found];
        require((long)word.size() <= 2 * (long)C.roots[(size_t)obj].size(),
                "longest_word: no termination");
    }
    require(word.size() == C.positive_roots(obj).size(),
            "longest_word: length disagrees with the positive root count");
    return word;
}

std::vector<Root> beta_sequence(const SemiCartanGraph& C, int obj,
                                const std::vector<int>& word) {
    require(C.is_finite && C.is_cartan_graph,
            "beta_sequence: graph is not a finite Cartan graph");
    int theta = C.theta;
    Matrix W = identity_matrix(theta);
    int cur = obj;
    std::vector<Root> betas;
    std::set<Root> seen;
    for (int i : word) {
        require(i >= 0 && i < theta, "beta_sequence: index out of range");
        Root v((size_t)theta);
        for (int r = 0; r < theta; ++r) v[(size_t)r] = W[(size_t)r][(size_t)i];
        require(is_positive_root(v) && seen.insert(v).second,
                "beta_sequence: word is not reduced");
        betas.push_back(v);
        W = mat_mul(W, simple_reflection_matrix(C.objects[(size_t)cur].cartan, i));
        cur = C.objects[(size_t)cur].edges[(size_t)i];
    }
    std::vector<Root> pos = C.positive_roots(obj);
    require(betas.size() == pos.size() &&
                std::set<Root>(betas.begin(), betas.end()) ==
                    std::set<Root>(pos.begin(), pos.end()),
            "beta_sequence: positive roots not exhausted");
    return betas;
}

std::vector<GroupoidElement> groupoid_elements_from(const SemiCartanGraph& C, int obj,
                                                    long cap) {
    require(C.is_finite && C.is_cartan_graph,
            "groupoid_elements_from: graph is not a finite Cartan graph");
    int theta = C.theta;
    std::set<std::pair<int, Matrix>> seen;
    std::vector<std::pair<int, Matrix>> todo;
    todo.push_back({obj, identity_matrix(theta)});
    seen.insert(todo[0]);
    for (size_t q = 0; q < todo.size(); ++q) {
        auto [y, M] = todo[q];
        for (int i = 0; i < theta; ++i) {
            Matrix M2 = mat_mul(simple_reflection_matrix(C.objects[(size_t)y].cartan, i), M);
            std::pair<int, Matrix> next{C.objects[(size_t)y].edges[(size_t)i], std::move(M2)};
            if (seen.insert(next).second) {
                require((long)seen.size() <= cap,
                        "groupoid_elements_from: morphism closure exceeded the cap");
                todo.push_back(std::move(next));
            }
        }
    }
    std::vector<GroupoidElement> out;
    for (const auto& [y, M] : seen) out.push_back({obj, y, M});
    return out;
}

std::vector<std::vector<Root>> weyl_orbits(const SemiCartanGraph& C, int obj) {
    std::vector<GroupoidElement> all = groupoid_elements_from(C, obj);
    const std::vector<Root>& roots = C.roots[(size_t)obj];
    std::map<Root, size_t> index;
    for (size_t k = 0; k < roots.size(); ++k) index[roots[k]] = k;
    std::vector<size_t> parent(roots.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& g : all) {
        if (g.target != obj) continue;
        for (size_t k = 0; k < roots.size(); ++k) {
            Root w = apply_matrix(g.m, roots[k]);
            auto it = index.find(w);
            require(it != index.end(), "weyl_orbits: automorphism leaves the root set");
            size_t a = find(k), b = find(it->second);
            if (a != b) parent[a] = b;
        }
    }
    std::map<size_t, std::vector<Root>> buckets;
    for (size_t k = 0; k < roots.size(); ++k) buckets[find(k)].push_back(roots[k]);
    std::vector<std::vector<Root>> orbits;
    for (auto& [_, v] : buckets) orbits.push_back(std::move(v));
    std::sort(orbits.begin(), orbits.end());
    return orbits;
}

namespace {

const std::vector<std::vector<Matrix>>& rank3_cases() {
    static const std::vector<std::vector<Matrix>> cases = {
        // case 3
        {{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}, {{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}}},
        // case 4
        {{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}, {{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}}},
        // case 5
        {{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}},
         {{2, -1, 0}, {-1, 2, -1}, {0, -4, 2}},
         {{2, -1, 0}, {-1, 2, -2}, {0, -2, 2}},
         {{2, -1, -1}, {-1, 2, -1}, {-1, -2, 2}},
         {{2, 0, -1}, {0, 2, -1}, {-1, -2, 2}},
         {{2, 0, -1}, {0, 2, -1}, {-1, -3, 2}}},
        // case 6
        {{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}},
         {{2, -1, 0}, {-1, 2, -1}, {0, -3, 2}},
         {{2, -1, 0}, {-1, 2, -2}, {0, -2, 2}},
         {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}},
         {{2, -1, 0}, {-2, 2, -3}, {0, -1, 2}},
         {{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}}}};
    return cases;
}

}  // namespace

std::string rank3_catalog_match(const SemiCartanGraph& C) {
    require(C.theta == 3, "rank3_catalog_match: rank is not 3");
    require(C.complete && C.is_finite && C.is_cartan_graph && C.indecomposable,
            "rank3_catalog_match: hypotheses unverified");
    bool has_a3 = false;
    for (const auto& obj : C.objects) {
        auto name = finite_type_name(obj.cartan);
        if (name && name->family == 'A' && name->rank == 3) has_a3 = true;
    }
    if (has_a3) return "A3-point-present";
    // every column has at most one entry strictly below -1
    for (const auto& obj : C.objects)
        for (int j = 0; j < 3; ++j) {
            int small = 0;
            for (int i = 0; i < 3; ++i)
                if (obj.cartan[(size_t)i][(size_t)j] < -1) ++small;
            require(small <= 1,
                    "rank3_catalog_match: column property violated (falsification candidate)");
        }
    if (C.is_standard) {
        auto name = finite_type_name(C.objects[0].cartan);
        if (name && name->family == 'C' && name->rank == 3) return "std-C3";
        if (name && name->family == 'B' && name->rank == 3) return "std-B3";
    }
    std::set<Matrix> distinct;
    for (const auto& obj : C.objects) distinct.insert(obj.cartan);
    for (size_t k = 0; k < rank3_cases().size(); ++k) {
        const auto& list = rank3_cases()[k];
        std::vector<int> p = {0, 1, 2};
        do {
            bool all_in = true;
            for (const Matrix& m : distinct)
                if (std::find(list.begin(), list.end(), permuted(m, p)) == list.end()) {
                    all_in = false;
                    break;
                }
            if (all_in) return "case" + std::to_string(k + 3);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return "none";
}

}  // namespace cartan
