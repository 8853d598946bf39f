#include "egp/matmod/permanent.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>
#include <vector>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"

namespace egp {
namespace {

void require_square(const IntMatrix& m, int max_dim, const char* engine) {
  if (!m.square()) throw PreconditionError(std::string(engine) + " permanent needs a square matrix");
  if (m.rows() > max_dim) {
    throw PreconditionError(std::string(engine) + " permanent is limited to dimension " + std::to_string(max_dim));
  }
}

struct StateHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

using StateMap = std::unordered_map<std::vector<std::uint32_t>, std::uint64_t, StateHash>;

/// Greedy row order keeping the number of open columns small; ties go to the lower index.
std::vector<int> choose_row_order(const std::vector<std::vector<int>>& nz, const std::vector<int>& rows_per_col) {
  const int r = static_cast<int>(nz.size());
  std::vector<bool> done(r, false);
  std::vector<int> remaining = rows_per_col;
  std::vector<bool> touched(rows_per_col.size(), false);
  std::vector<int> order;
  int open = 0;
  for (int step = 0; step < r; ++step) {
    int best = -1;
    int best_open = 0;
    for (int i = 0; i < r; ++i) {
      if (done[i]) continue;
      int after = open;
      for (int j : nz[i]) {
        if (!touched[j]) ++after;
        if (remaining[j] == 1) --after;
      }
      if (best < 0 || after < best_open) {
        best = i;
        best_open = after;
      }
    }
    done[best] = true;
    for (int j : nz[best]) {
      touched[j] = true;
      --remaining[j];
    }
    open = best_open;
    order.push_back(best);
  }
  return order;
}

}  // namespace

mpz_class permanent_naive(const IntMatrix& m) {
  require_square(m, 12, "naive");
  const int n = m.rows();
  if (n == 0) return 1;
  std::vector<mpz_class> partial(n + 1);
  partial[0] = 1;
  std::vector<bool> used(n, false);
  mpz_class total = 0;
  auto expand = [&](auto&& self, int row) -> void {
    if (row == n) {
      total += partial[n];
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || m(row, j) == 0) continue;
      used[j] = true;
      partial[row + 1] = partial[row] * static_cast<long>(m(row, j));
      self(self, row + 1);
      used[j] = false;
    }
  };
  expand(expand, 0);
  return total;
}

std::uint64_t permanent_naive_mod(const IntMatrix& m, std::uint64_t modulus) {
  require_square(m, 12, "naive");
  const Modulus f(modulus);
  const int n = m.rows();
  if (n == 0) return 1 % modulus;
  const ResidueMatrix a = reduce(m, f);
  std::vector<std::uint64_t> partial(n + 1);
  partial[0] = 1;
  std::vector<bool> used(n, false);
  std::uint64_t total = 0;
  auto expand = [&](auto&& self, int row) -> void {
    if (row == n) {
      total = f.add(total, partial[n]);
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || a(row, j) == 0) continue;
      used[j] = true;
      partial[row + 1] = f.mul(partial[row], a(row, j));
      self(self, row + 1);
      used[j] = false;
    }
  };
  expand(expand, 0);
  return total;
}

std::uint64_t permanent_ryser_mod(const IntMatrix& m, std::uint64_t modulus) {
  require_square(m, 30, "Ryser");
  const Modulus f(modulus);
  const int n = m.rows();
  if (n == 0) return 1 % modulus;
  const ResidueMatrix a = reduce(m, f);
  std::vector<std::uint64_t> row_sum(n, 0);
  std::uint64_t total = 0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = 1ULL << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = 1ULL << j;
    const bool adding = (gray & bit) == 0;
    gray ^= bit;
    for (int i = 0; i < n; ++i) row_sum[i] = adding ? f.add(row_sum[i], a(i, j)) : f.sub(row_sum[i], a(i, j));
    std::uint64_t prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) prod = f.mul(prod, row_sum[i]);
    // Sign (-1)^(n - |S|).
    const int size = std::popcount(gray);
    total = ((n - size) % 2 == 0) ? f.add(total, prod) : f.sub(total, prod);
  }
  return total;
}

BlockPermanent permanent_block(const BlockSpec& spec, std::uint64_t p, const BlockOptions& options) {
  const IntMatrix& m = spec.base;
  const std::int64_t a = spec.row_multiplicity;
  const std::int64_t b = spec.column_multiplicity;
  const int r = m.rows();
  const int c = m.cols();
  if (a < 1 || b < 1) throw PreconditionError("block multiplicities must be positive");
  if (r < 1 || c < 1) throw PreconditionError("block base must be non-empty");
  if (spec.expanded_rows() != spec.expanded_cols()) throw PreconditionError("expanded block matrix is not square");
  if (p < 2) throw PreconditionError("modulus must be at least 2");
  const Modulus field(p);

  if (!is_prime(p)) {
    if (static_cast<std::uint64_t>(a) + 1 != p) {
      throw PreconditionError("a composite modulus is only supported when it equals the row multiplicity plus one");
    }
    BlockPermanent out;
    out.composite_modulus = true;
    if (r >= 2) return out;
    // One base row: every expanded row is identical, so Perm = a! * prod_j m_j^b.
    std::uint64_t value = 1;
    for (std::int64_t k = 2; k <= a; ++k) value = field.mul(value, static_cast<std::uint64_t>(k));
    for (int j = 0; j < c; ++j) value = field.mul(value, field.pow(field.reduce(m(0, j)), static_cast<std::uint64_t>(b)));
    out.residue = value;
    return out;
  }

  auto ryser_fallback = [&](const char* reason) {
    if (spec.expanded_rows() > options.ryser_fallback_limit) {
      throw BudgetExceeded(std::string(reason) + " and the expanded matrix is too large for Ryser");
    }
    BlockPermanent out;
    out.residue = permanent_ryser_mod(kron_ones(m, static_cast<int>(a), static_cast<int>(b)), p);
    out.used_fallback = true;
    return out;
  };
  if (static_cast<std::uint64_t>(a) >= p || static_cast<std::uint64_t>(b) >= p) {
    return ryser_fallback("block multiplicities reach the modulus");
  }

  // Factorials up to max(a, b), all invertible because max(a, b) < p.
  const std::int64_t top = std::max(a, b);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(top) + 1, 1);
  for (std::int64_t k = 1; k <= top; ++k) fact[k] = field.mul(fact[k - 1], static_cast<std::uint64_t>(k));
  std::vector<std::uint64_t> inv_fact(fact.size());
  inv_fact[top] = field.inv(fact[top]);
  for (std::int64_t k = top; k > 0; --k) inv_fact[k - 1] = field.mul(inv_fact[k], static_cast<std::uint64_t>(k));

  std::vector<std::vector<int>> nz(r);
  std::vector<int> rows_per_col(c, 0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      if (field.reduce(m(i, j)) != 0) {
        nz[i].push_back(j);
        ++rows_per_col[j];
      }
    }
    if (nz[i].empty()) return {};
  }
  if (std::find(rows_per_col.begin(), rows_per_col.end(), 0) != rows_per_col.end()) return {};

  const std::vector<int> order = choose_row_order(nz, rows_per_col);
  std::vector<int> first_pos(c, r);
  std::vector<int> last_pos(c, -1);
  for (int t = 0; t < r; ++t) {
    for (int j : nz[order[t]]) {
      first_pos[j] = std::min(first_pos[j], t);
      last_pos[j] = std::max(last_pos[j], t);
    }
  }
  // open[t]: columns carried into step t, sorted.
  std::vector<std::vector<int>> open(r + 1);
  for (int t = 0; t <= r; ++t) {
    for (int j = 0; j < c; ++j) {
      if (first_pos[j] < t && last_pos[j] >= t) open[t].push_back(j);
    }
  }

  const auto kmax = static_cast<std::size_t>(std::min(a, b));
  StateMap layer;
  layer.emplace(std::vector<std::uint32_t>{}, 1);
  for (int t = 0; t < r; ++t) {
    const int row = order[t];
    const auto& cols = nz[row];
    std::vector<int> closing;
    std::vector<int> continuing;
    for (int j : cols) (last_pos[j] == t ? closing : continuing).push_back(j);
    // terms[j][k] = m_ij^k / k!
    auto term_table = [&](int j) {
      std::vector<std::uint64_t> tt(kmax + 1);
      const std::uint64_t x = field.reduce(m(row, j));
      std::uint64_t pw = 1;
      for (std::size_t k = 0; k <= kmax; ++k) {
        tt[k] = field.mul(pw, inv_fact[k]);
        pw = field.mul(pw, x);
      }
      return tt;
    };
    std::vector<std::vector<std::uint64_t>> close_terms;
    for (int j : closing) close_terms.push_back(term_table(j));
    std::vector<std::vector<std::uint64_t>> cont_terms;
    for (int j : continuing) cont_terms.push_back(term_table(j));

    auto slot_in = [](const std::vector<int>& v, int j) {
      auto it = std::lower_bound(v.begin(), v.end(), j);
      return (it != v.end() && *it == j) ? static_cast<int>(it - v.begin()) : -1;
    };
    std::vector<int> close_src;
    for (int j : closing) close_src.push_back(slot_in(open[t], j));
    std::vector<int> cont_src;
    for (int j : continuing) cont_src.push_back(slot_in(open[t], j));
    // For each slot of the next state: where its capacity comes from.
    std::vector<int> next_from_state(open[t + 1].size(), -1);
    std::vector<int> next_from_cont(open[t + 1].size(), -1);
    for (std::size_t s = 0; s < open[t + 1].size(); ++s) {
      const int j = open[t + 1][s];
      next_from_cont[s] = slot_in(continuing, j);
      if (next_from_cont[s] < 0) next_from_state[s] = slot_in(open[t], j);
    }

    StateMap next;
    std::vector<std::uint32_t> caps(continuing.size());
    std::vector<std::uint32_t> take(continuing.size());
    std::vector<std::int64_t> suffix(continuing.size() + 1);
    for (const auto& [state, weight] : layer) {
      std::int64_t budget = a;
      std::uint64_t w = weight;
      for (std::size_t i = 0; i < closing.size() && w != 0; ++i) {
        const std::int64_t cap = close_src[i] >= 0 ? state[close_src[i]] : b;
        budget -= cap;
        if (budget < 0) {
          w = 0;
          break;
        }
        w = field.mul(w, close_terms[i][cap]);
      }
      if (w == 0) continue;
      for (std::size_t i = 0; i < continuing.size(); ++i) {
        caps[i] = cont_src[i] >= 0 ? state[cont_src[i]] : static_cast<std::uint32_t>(b);
      }
      suffix[continuing.size()] = 0;
      for (std::size_t i = continuing.size(); i > 0; --i) suffix[i - 1] = suffix[i] + caps[i - 1];
      if (suffix[0] < budget) continue;
      auto distribute = [&](auto&& self, std::size_t i, std::int64_t left, std::uint64_t acc) -> void {
        if (i == continuing.size()) {
          if (left != 0) return;
          std::vector<std::uint32_t> key(open[t + 1].size());
          for (std::size_t s = 0; s < key.size(); ++s) {
            key[s] = next_from_cont[s] >= 0 ? caps[next_from_cont[s]] - take[next_from_cont[s]]
                                            : state[next_from_state[s]];
          }
          auto& slot = next[std::move(key)];
          slot = field.add(slot, acc);
          return;
        }
        const std::int64_t lo = std::max<std::int64_t>(0, left - suffix[i + 1]);
        const std::int64_t hi = std::min<std::int64_t>(left, caps[i]);
        for (std::int64_t k = lo; k <= hi; ++k) {
          const std::uint64_t term = cont_terms[i][static_cast<std::size_t>(k)];
          if (term == 0) continue;
          take[i] = static_cast<std::uint32_t>(k);
          self(self, i + 1, left - k, field.mul(acc, term));
        }
      };
      distribute(distribute, 0, budget, w);
    }
    layer = std::move(next);
    if (layer.size() > options.max_states) return ryser_fallback("block DP exceeded its state budget");
  }

  std::uint64_t sum = 0;
  for (const auto& [state, weight] : layer) sum = field.add(sum, weight);
  BlockPermanent out;
  out.residue = field.mul(sum, field.mul(field.pow(fact[a], static_cast<std::uint64_t>(r)),
                                         field.pow(fact[b], static_cast<std::uint64_t>(c))));
  return out;
}

}  // namespace egp
