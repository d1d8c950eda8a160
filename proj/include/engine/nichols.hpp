#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engine/cartan.hpp"
#include "engine/ydmod.hpp"

namespace nichols {

// Polynomial in theta grading variables with integer coefficients.
struct HilbertSeries {
    int theta = 1;
    std::map<std::vector<long>, long long> coeff;
    // set when terms above this total degree were dropped
    std::optional<long> truncated_at;
};

HilbertSeries hs_one(int theta);
// (m)_t = 1 + t + ... + t^{m-1} in one variable
HilbertSeries q_number_series(long m);
HilbertSeries hs_mul(const HilbertSeries& a, const HilbertSeries& b);
// substitutes the single variable of s by t^beta
HilbertSeries hs_substitute(const HilbertSeries& s, const std::vector<long>& beta);
// coefficient sums per total degree 0..max_degree
std::vector<long long> collapse_total_degree(const HilbertSeries& s, long max_degree);
long long evaluate_at_one(const HilbertSeries& s);
// sorted "exponent-vector : coefficient" lines
std::string to_string(const HilbertSeries& s);

// 2^12 * 3^6 style factorization of a positive integer
std::string factor_string(long long n);

// Dimension of the degree-n component of the Nichols algebra of V:
// the rank of the quantum symmetrizer (the sum of positive braid lifts
// over the symmetric group) on the n-th tensor power.
long long symmetrizer_graded_dim(const ydmod::YDModule& V, int n,
                                 scalars::Characteristic ch, long conductor = 0);

// Graded dimensions until the first vanishing component, as a polynomial.
// Throws when no component vanishes within max_degree.
HilbertSeries rank_one_hilbert(const ydmod::YDModule& V, scalars::Characteristic ch,
                               int max_degree = 12);

// Block-diagonal join of Yetter-Drinfeld modules over one group.
ydmod::YDModule direct_sum(const std::vector<ydmod::YDModule>& mods);

struct HilbertCaps {
    int adjoint_cap = 8;
    int max_degree = 12;
    long conductor = 0;  // 0 selects the lcm of the scalar orders
};

struct RootModuleData {
    std::vector<long> beta;
    int dim = 0;
    HilbertSeries series;  // one variable
};

// The positive-root modules of M along a longest word of C, each with its
// rank-one Hilbert series.  C must have been explored from M.
std::vector<RootModuleData> root_module_series(const ydmod::YDTuple& M,
                                               const cartan::SemiCartanGraph& C,
                                               const HilbertCaps& caps = {});

// Product of the root-module series with t specialized to t^beta.
HilbertSeries hilbert_series(const ydmod::YDTuple& M, const cartan::SemiCartanGraph& C,
                             const HilbertCaps& caps = {});

struct DimensionResult {
    bool finite = false;
    long long value = 0;
    std::string factored;
};

DimensionResult nichols_dimension(const ydmod::YDTuple& M, const cartan::SemiCartanGraph& C,
                                  const HilbertCaps& caps = {});

struct CrosscheckReport {
    bool match = false;
    std::vector<long long> product_dims;
    std::vector<long long> oracle_dims;
};

// Compares the product series, collapsed to total degree, against direct
// symmetrizer ranks of the direct sum of the tuple entries.
CrosscheckReport hilbert_oracle_crosscheck(const ydmod::YDTuple& M,
                                           const cartan::SemiCartanGraph& C,
                                           long total_degree,
                                           const HilbertCaps& caps = {});

}  // namespace nichols
