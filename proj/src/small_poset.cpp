#include "strposet/small_poset.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "strposet/error.hpp"

namespace strposet {

AbstractPoset::AbstractPoset(std::vector<std::vector<bool>> leq) : leq_(std::move(leq)) {
  for (const auto& row : leq_)
    if (row.size() != leq_.size()) throw Error("order relation must be square");
}

std::vector<std::pair<std::size_t, std::size_t>> AbstractPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!less(i, j)) continue;
      bool between = false;
      for (std::size_t k = 0; k < n && !between; ++k) between = less(i, k) && less(k, j);
      if (!between) out.emplace_back(i, j);
    }
  }
  return out;
}

int AbstractPoset::dimension() const {
  const std::size_t n = size();
  // Longest chain ending at each element, relaxed n times (n <= small).
  std::vector<int> depth(n, 0);
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (less(i, j) && depth[i] + 1 > depth[j]) {
          depth[j] = depth[i] + 1;
          changed = true;
        }
    if (!changed) break;
  }
  return n == 0 ? 0 : *std::max_element(depth.begin(), depth.end());
}

AbstractPoset make_I(std::size_t r) {
  std::vector<std::vector<bool>> leq(r + 1, std::vector<bool>(r + 1, false));
  for (std::size_t i = 0; i <= r; ++i) {
    leq[i][i] = true;
    leq[i][r] = true;
  }
  return AbstractPoset(std::move(leq));
}

AbstractPoset make_chain(std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  return AbstractPoset(std::move(leq));
}

bool small_poset_isomorphic(const AbstractPoset& p, const AbstractPoset& q) {
  if (p.size() > kSmallPosetLimit || q.size() > kSmallPosetLimit) {
    throw CapacityError("small_poset_isomorphic supports at most " +
                        std::to_string(kSmallPosetLimit) + " elements");
  }
  if (p.size() != q.size()) return false;
  const std::size_t n = p.size();

  // (elements below, elements above) must match under any isomorphism.
  auto signature = [n](const AbstractPoset& s, std::size_t i) {
    std::size_t below = 0, above = 0;
    for (std::size_t j = 0; j < n; ++j) {
      below += s.less(j, i) ? 1 : 0;
      above += s.less(i, j) ? 1 : 0;
    }
    return std::pair{below, above};
  };
  std::vector<std::pair<std::size_t, std::size_t>> sp(n), sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    sp[i] = signature(p, i);
    sq[i] = signature(q, i);
  }
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }

  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || sq[c] != sp[i]) continue;
      bool ok = p.leq(i, i) == q.leq(c, c);
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = p.leq(k, i) == q.leq(image[k], c) && p.leq(i, k) == q.leq(c, image[k]);
      }
      if (!ok) continue;
      used[c] = true;
      image[i] = c;
      if (extend(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  return extend(0);
}

}  // namespace strposet
