#include "dimlab/words.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace dimlab {

bool is_binary_word(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

bool is_ternary_word(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1' || c == kStar; });
}

Word strip_stars(std::string_view w) {
  Word out;
  for (char c : w) {
    if (c != kStar) out.push_back(c);
  }
  return out;
}

TreeIndex heap_index(std::string_view w) {
  if (w.size() > 63) throw Error(ErrorKind::OutOfRange, "heap index supports words of length <= 63");
  if (!is_binary_word(w)) throw Error(ErrorKind::Parse, "heap index needs a binary word");
  TreeIndex k = 1;
  for (char c : w) k = 2 * k + static_cast<TreeIndex>(c - '0');
  return k;
}

Word heap_word(TreeIndex k) {
  if (k == 0) throw Error(ErrorKind::OutOfRange, "heap indices start at 1");
  Word out;
  while (k > 1) {
    out.push_back(static_cast<char>('0' + (k & 1)));
    k >>= 1;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

TreeIndex parent_index(TreeIndex k) {
  if (k <= 1) throw Error(ErrorKind::RootHasNoParent, "index 1 is the root");
  return k / 2;
}

namespace {

constexpr int kFree = INT_MAX;

// k_i for i = 1..n, with kFree standing for k_i >= n (no constraint).
std::vector<int> constraint_levels(int n, const Sequence& kseq) {
  std::vector<int> out(static_cast<std::size_t>(n) + 1, kFree);
  for (int i = 1; i <= n; ++i) {
    auto term = kseq.term_if_at_most(static_cast<std::uint64_t>(i), Integer(n - 1));
    if (term) out[static_cast<std::size_t>(i)] = static_cast<int>(term->get_si());
  }
  return out;
}

void check_cap(int n) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "negative word length");
  if (n > kOmegaCap) {
    throw Error(ErrorKind::EnumerationCapExceeded,
                "Omega enumeration is capped at n = " + std::to_string(kOmegaCap) + ", got " + std::to_string(n));
  }
}

}  // namespace

bool omega_member(std::string_view w, const Sequence& kseq) {
  if (!is_ternary_word(w)) return false;
  const int n = static_cast<int>(w.size());
  const auto levels = constraint_levels(n, kseq);
  for (int i = 1; i <= n; ++i) {
    if (w[static_cast<std::size_t>(i - 1)] != '1' || levels[static_cast<std::size_t>(i)] == kFree) continue;
    for (int j = levels[static_cast<std::size_t>(i)] + 1; j <= n; ++j) {
      if (w[static_cast<std::size_t>(j - 1)] != kStar) return false;
    }
  }
  return true;
}

void omega_visit(int n, const Sequence& kseq, const std::function<void(const Word&)>& visit) {
  check_cap(n);
  const auto levels = constraint_levels(n, kseq);
  Word w(static_cast<std::size_t>(n), kStar);
  // forced: every position beyond it must be '*'
  std::function<void(int, int)> rec = [&](int i, int forced) {
    if (i > n) {
      visit(w);
      return;
    }
    auto& slot = w[static_cast<std::size_t>(i - 1)];
    if (i > forced) {
      slot = kStar;
      rec(i + 1, forced);
      return;
    }
    slot = '0';
    rec(i + 1, forced);
    const int ki = levels[static_cast<std::size_t>(i)];
    if (ki == kFree || ki >= i) {
      slot = '1';
      rec(i + 1, ki == kFree ? forced : std::min(forced, ki));
    }
    slot = kStar;
    rec(i + 1, forced);
  };
  rec(1, kFree);
}

std::vector<Word> omega_enumerate(int n, const Sequence& kseq) {
  std::vector<Word> out;
  omega_visit(n, kseq, [&](const Word& w) { out.push_back(w); });
  return out;
}

Integer omega_cardinality(int n, const Sequence& kseq) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "negative word length");
  const auto levels = constraint_levels(n, kseq);
  std::map<int, Integer> ways{{kFree, Integer(1)}};
  for (int i = 1; i <= n; ++i) {
    std::map<int, Integer> next;
    const int ki = levels[static_cast<std::size_t>(i)];
    for (const auto& [forced, count] : ways) {
      if (i > forced) {
        next[forced] += count;
        continue;
      }
      next[forced] += 2 * count;  // '0' or '*'
      if (ki == kFree) {
        next[forced] += count;
      } else if (ki >= i) {
        next[std::min(forced, ki)] += count;
      }
    }
    ways = std::move(next);
  }
  Integer total = 0;
  for (const auto& [forced, count] : ways) total += count;
  return total;
}

std::vector<Word> omega_skeletons(int n, const Sequence& kseq) {
  check_cap(n);
  const auto levels = constraint_levels(n, kseq);
  std::set<std::pair<Word, int>> states{{Word(), kFree}};
  for (int i = 1; i <= n; ++i) {
    std::set<std::pair<Word, int>> next;
    const int ki = levels[static_cast<std::size_t>(i)];
    for (const auto& [v, forced] : states) {
      next.emplace(v, forced);  // '*' (the only choice past the forced bound)
      if (i > forced) continue;
      next.emplace(v + '0', forced);
      if (ki == kFree) {
        next.emplace(v + '1', forced);
      } else if (ki >= i) {
        next.emplace(v + '1', std::min(forced, ki));
      }
    }
    states = std::move(next);
  }
  std::vector<Word> out;
  for (const auto& [v, forced] : states) out.push_back(v);
  std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dimlab
