#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "opct/poset.hpp"

namespace brute {

// A finite poset kept as a plain comparability matrix, independent of the
// library's closure code.
struct Finite {
    int n = 0;
    std::vector<std::string> names;
    std::vector<std::vector<bool>> le;  // le[a][b]: a <= b

    bool comparable(int a, int b) const { return le[a][b] || le[b][a]; }
};

Finite from_edges(int n, const std::vector<std::pair<int, int>>& lower_upper);
opct::Poset to_poset(const Finite& f);

// Literal definitions over all subsets (bit i = element i).
bool is_band(const Finite& f, std::uint32_t b);
bool is_cap(const Finite& f, std::uint32_t c);  // some band B with B refining c
std::vector<std::uint32_t> minimal_selectors(const Finite& f);
bool is_up_set(const Finite& f, std::uint32_t s);

// Random poset on n elements: edges only from higher index to lower index.
Finite random_poset(std::mt19937& rng, int n, double density);
// Random graded finite poset: rank sizes drawn from [1, width], each element
// of rank r+1 gets at least one parent of rank r.
Finite random_graded(std::mt19937& rng, int ranks, int width, double density);

// Exact-rational arc intervals: level n, index k covers
// [max(0, k/2^{n+1}), min(1, (k+2)/2^{n+1})].
struct Interval {
    long long lo_num, hi_num, den;
};
Interval arc_interval(int n, long long k);
bool overlaps(const Interval& a, const Interval& b);  // interiors meet
bool inside(const Interval& a, const Interval& b);
// Every level-m star lies inside some level-n interval.
bool arc_star_refines(int m, int n);

}  // namespace brute
