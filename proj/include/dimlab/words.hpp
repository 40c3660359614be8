#pragma once

// Binary and ternary words, the heap bijection between binary words and
// positive integers, and the admissible ternary language Omega_n(k).
//
// Words are plain strings over '0', '1' and '*'.

#include "dimlab/params.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dimlab {

using Word = std::string;
using TreeIndex = std::uint64_t;

inline constexpr char kStar = '*';
inline constexpr int kOmegaCap = 20;

bool is_binary_word(std::string_view w);
bool is_ternary_word(std::string_view w);

/// Removes the identity letters.
Word strip_stars(std::string_view w);

/// f(eps) = 1, f(w_1..w_n) = 2^n + sum w_i 2^{n-i}. Words up to length 63.
TreeIndex heap_index(std::string_view w);
Word heap_word(TreeIndex k);
/// floor(k/2); throws RootHasNoParent for k = 1.
TreeIndex parent_index(TreeIndex k);

/// True iff whenever w_i = 1 and k_i < n = |w|, every later position j > k_i
/// carries '*'. A '1' at position i with k_i < i is therefore inadmissible.
bool omega_member(std::string_view w, const Sequence& kseq);

/// Visits Omega_n(k) in lexicographic order of ('0' < '1' < '*').
void omega_visit(int n, const Sequence& kseq, const std::function<void(const Word&)>& visit);
/// Materialized Omega_n(k); throws EnumerationCapExceeded for n > kOmegaCap.
std::vector<Word> omega_enumerate(int n, const Sequence& kseq);
/// Exact |Omega_n(k)| by a forward pass over the forced-star bound.
Integer omega_cardinality(int n, const Sequence& kseq);

/// Distinct star-stripped binary words of Omega_n(k), sorted by (length, word).
std::vector<Word> omega_skeletons(int n, const Sequence& kseq);

}  // namespace dimlab
