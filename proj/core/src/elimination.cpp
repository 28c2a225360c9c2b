#include "parthom/elimination.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace parthom {

namespace {

// Arithmetic for elimination over Z/p.
struct ModP {
  using Value = std::uint32_t;
  std::uint32_t p;

  Value convert(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p);
    return static_cast<Value>(r < 0 ? r + p : r);
  }
  bool is_zero(Value v) const { return v == 0; }
  bool allowed(Value) const { return true; }
  bool preferred(Value) const { return true; }
  bool tiebreak_less(Value, Value) const { return false; }

  Value mul(Value a, Value b) const {
    return static_cast<Value>(static_cast<std::uint64_t>(a) * b % p);
  }
  Value add(Value a, Value b) const {
    auto s = static_cast<std::uint64_t>(a) + b;
    return static_cast<Value>(s >= p ? s - p : s);
  }
  Value inverse(Value a) const {
    Value result = 1, base = a;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  // (a, b) with a * coef + b * pivot == 0; a is always 1 here.
  std::pair<Value, Value> multipliers(Value pivot, Value coef) const {
    Value b = mul(coef, inverse(pivot));
    return {1, b == 0 ? 0 : p - b};
  }
  Value scale(Value a, Value x) const { return a == 1 ? x : mul(a, x); }
  Value combine(Value a, Value x, Value b, Value y) const { return add(scale(a, x), mul(b, y)); }
  template <class Line>
  void normalize(Line&, const Value&) {}
};

// Arithmetic over Z. Fraction-free mode keeps rows primitive (rank over Q is
// preserved); unimodular mode only pivots on units and never rescales, which
// preserves the Smith normal form.
struct Integers {
  using Value = BigInt;
  bool unimodular = false;
  std::size_t max_bits = 0;

  Value convert(std::int64_t v) const { return Value(static_cast<long>(v)); }
  bool is_zero(const Value& v) const { return sgn(v) == 0; }
  static bool is_unit(const Value& v) { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }
  bool allowed(const Value& v) const { return !unimodular || is_unit(v); }
  bool preferred(const Value& v) const { return is_unit(v); }
  bool tiebreak_less(const Value& a, const Value& b) const {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
  }

  std::pair<Value, Value> multipliers(const Value& pivot, const Value& coef) const {
    if (unimodular) return {Value(1), Value(-coef * pivot)};
    Value g;
    mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), coef.get_mpz_t());
    return {Value(pivot / g), Value(-coef / g)};
  }
  Value scale(const Value& a, const Value& x) {
    if (a == 1) return x;
    return track(a * x);
  }
  Value combine(const Value& a, const Value& x, const Value& b, const Value& y) {
    Value r = a == 1 ? Value(x + b * y) : Value(a * x + b * y);
    return track(std::move(r));
  }
  Value track(Value v) {
    max_bits = std::max(max_bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    return v;
  }
  template <class Line>
  void normalize(Line& line, const Value& a) {
    if (unimodular || is_unit(a) || line.empty()) return;
    Value g = 0;
    for (const auto& e : line) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.val.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& e : line) mpz_divexact(e.val.get_mpz_t(), e.val.get_mpz_t(), g.get_mpz_t());
  }
};

template <class Ring>
class Eliminator {
 public:
  using Value = typename Ring::Value;
  struct Entry {
    std::uint32_t idx;
    Value val;
  };
  using Line = std::vector<Entry>;

  Eliminator(const SparseIntMatrix& m, Ring ring, EliminationLimits limits)
      : ring_(std::move(ring)),
        limits_(limits),
        lines_(m.cols()),
        alive_(m.cols(), 1),
        parked_(m.cols(), 0),
        cross_(m.rows()) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto rs = m.column_rows(j);
      auto vs = m.column_values(j);
      auto& line = lines_[j];
      line.reserve(rs.size());
      for (std::size_t k = 0; k < rs.size(); ++k) {
        Value v = ring_.convert(vs[k]);
        if (ring_.is_zero(v)) continue;
        line.push_back({rs[k], std::move(v)});
        cross_[rs[k]].push_back(static_cast<std::uint32_t>(j));
      }
      entries_ += line.size();
    }
    check_budget();
  }

  std::size_t run() {
    for (std::size_t j = 0; j < lines_.size(); ++j)
      heap_.push({static_cast<std::uint32_t>(lines_[j].size()), static_cast<std::uint32_t>(j)});
    while (!heap_.empty()) {
      auto [len, l] = heap_.top();
      heap_.pop();
      if (!alive_[l] || parked_[l] || lines_[l].size() != len) continue;
      if (len == 0) {
        alive_[l] = 0;
        continue;
      }
      auto pos = choose_pivot(l);
      if (pos == kNone) {
        parked_[l] = 1;
        continue;
      }
      pivot(l, pos);
      ++rank_;
      check_budget();
    }
    return rank_;
  }

  /// Lines that are still alive after run(): no allowed pivot was found.
  std::vector<const Line*> residual() const {
    std::vector<const Line*> out;
    for (std::size_t j = 0; j < lines_.size(); ++j)
      if (alive_[j] && !lines_[j].empty()) out.push_back(&lines_[j]);
    return out;
  }

  Ring& ring() { return ring_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t choose_pivot(std::uint32_t l) const {
    const Line& line = lines_[l];
    std::size_t best = kNone;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (!ring_.allowed(line[k].val)) continue;
      if (best == kNone) {
        best = k;
        continue;
      }
      const bool pk = ring_.preferred(line[k].val), pb = ring_.preferred(line[best].val);
      if (pk != pb) {
        if (pk) best = k;
        continue;
      }
      auto ck = cross_[line[k].idx].size(), cb = cross_[line[best].idx].size();
      if (ck < cb || (ck == cb && ring_.tiebreak_less(line[k].val, line[best].val))) best = k;
    }
    return best;
  }

  void pivot(std::uint32_t l, std::size_t pos) {
    const Line& p = lines_[l];
    const std::uint32_t idx = p[pos].idx;
    const Value pv = p[pos].val;
    auto& users = cross_[idx];
    for (std::size_t u = 0; u < users.size(); ++u) {
      const std::uint32_t mi = users[u];
      if (mi == l || !alive_[mi]) continue;
      Line& m = lines_[mi];
      auto it = std::lower_bound(m.begin(), m.end(), idx,
                                 [](const Entry& e, std::uint32_t i) { return e.idx < i; });
      if (it == m.end() || it->idx != idx) continue;
      auto [a, b] = ring_.multipliers(pv, it->val);

      scratch_.clear();
      scratch_.reserve(m.size() + p.size());
      std::size_t i = 0, k = 0;
      while (i < m.size() || k < p.size()) {
        if (k == p.size() || (i < m.size() && m[i].idx < p[k].idx)) {
          scratch_.push_back({m[i].idx, ring_.scale(a, m[i].val)});
          ++i;
        } else if (i == m.size() || p[k].idx < m[i].idx) {
          Value v = ring_.scale(b, p[k].val);
          if (!ring_.is_zero(v)) {
            scratch_.push_back({p[k].idx, std::move(v)});
            cross_[p[k].idx].push_back(mi);
          }
          ++k;
        } else {
          if (m[i].idx != idx) {
            Value v = ring_.combine(a, m[i].val, b, p[k].val);
            if (!ring_.is_zero(v)) scratch_.push_back({m[i].idx, std::move(v)});
          }
          ++i;
          ++k;
        }
      }
      ring_.normalize(scratch_, a);
      entries_ += scratch_.size();
      entries_ -= m.size();
      m.swap(scratch_);
      parked_[mi] = 0;
      heap_.push({static_cast<std::uint32_t>(m.size()), mi});
    }
    entries_ -= p.size();
    alive_[l] = 0;
    Line().swap(lines_[l]);
    std::vector<std::uint32_t>().swap(users);
  }

  void check_budget() const {
    if (limits_.max_entries != 0 && entries_ > limits_.max_entries)
      throw ResourceAbort("sparse elimination exceeded its budget of " +
                          std::to_string(limits_.max_entries) + " live entries");
  }

  Ring ring_;
  EliminationLimits limits_;
  std::vector<Line> lines_;
  std::vector<char> alive_;
  std::vector<char> parked_;
  std::vector<std::vector<std::uint32_t>> cross_;
  std::priority_queue<std::pair<std::uint32_t, std::uint32_t>,
                      std::vector<std::pair<std::uint32_t, std::uint32_t>>, std::greater<>>
      heap_;
  Line scratch_;
  std::size_t entries_ = 0;
  std::size_t rank_ = 0;
};

}  // namespace

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const EliminationLimits& limits) {
  if (p < 3 || p % 2 == 0 || p >= (1u << 31))
    throw std::invalid_argument("rank_mod_p: modulus must be an odd prime below 2^31");
  Eliminator<ModP> e(m, ModP{p}, limits);
  return e.run();
}

std::size_t rank_certified(const SparseIntMatrix& m, const EliminationLimits& limits) {
  Eliminator<Integers> e(m, Integers{}, limits);
  return e.run();
}

std::string_view to_string(RankMethod method) {
  switch (method) {
    case RankMethod::automatic: return "automatic";
    case RankMethod::certified: return "certified";
    case RankMethod::modular: return "modular";
  }
  return "automatic";
}

RankReport rank_exact_report(const SparseIntMatrix& m, const RankOptions& options) {
  RankReport report;
  const bool certified_only =
      options.method == RankMethod::certified ||
      (options.method == RankMethod::automatic && m.nonzeros() <= options.certified_max_nonzeros);
  if (certified_only) {
    report.rank = rank_certified(m, options.limits);
    report.method = RankMethod::certified;
    return report;
  }

  report.method = RankMethod::modular;
  if (options.parallel_primes) {
    auto second = std::async(std::launch::async,
                             [&] { return rank_mod_p(m, kRankPrimes[1], options.limits); });
    report.modular_ranks.push_back(rank_mod_p(m, kRankPrimes[0], options.limits));
    report.modular_ranks.push_back(second.get());
  } else {
    for (auto p : kRankPrimes) report.modular_ranks.push_back(rank_mod_p(m, p, options.limits));
  }

  bool agree = std::adjacent_find(report.modular_ranks.begin(), report.modular_ranks.end(),
                                  std::not_equal_to<>()) == report.modular_ranks.end();

  if (agree && options.spot_check_columns > 0 && m.cols() > 0) {
    std::mt19937_64 rng(options.seed);
    std::vector<SparseIntMatrix::Index> all(m.cols());
    std::iota(all.begin(), all.end(), 0u);
    std::vector<SparseIntMatrix::Index> cols;
    std::sample(all.begin(), all.end(), std::back_inserter(cols),
                std::min(options.spot_check_columns, all.size()), rng);
    std::vector<SparseIntMatrix::Index> rows;
    for (auto j : cols)
      for (auto r : m.column_rows(j)) rows.push_back(r);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    auto sub = m.submatrix(rows, cols);
    report.spot_check_passed = rank_certified(sub) == rank_mod_p(sub, kRankPrimes[0]);
  }

  if (!agree || !report.spot_check_passed) {
    report.escalated = true;
    report.rank = rank_certified(m, options.limits);
    report.method = RankMethod::certified;
  } else {
    report.rank = report.modular_ranks.front();
  }
  return report;
}

std::vector<BigInt> smith_normal_form_dense(std::vector<std::vector<BigInt>> a,
                                            std::size_t* max_entry_bits) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t bits = 0;
  auto note = [&](const BigInt& v) {
    if (sgn(v) != 0) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  };
  for (const auto& row : a)
    for (const auto& v : row) note(v);

  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto bring_min_to_pivot = [&]() -> bool {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a[i][j]) != 0 &&
              (bi == rows || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0))
            bi = i, bj = j;
      if (bi == rows) return false;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      return true;
    };
    if (!bring_min_to_pivot()) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) {
            a[i][j] -= q * a[t][j];
            note(a[i][j]);
          }
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) {
            a[i][j] -= q * a[i][t];
            note(a[i][j]);
          }
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (clean) break;
      // A remainder is smaller than the pivot: move it in and repeat.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (sgn(a[i][t]) != 0 && mpz_cmpabs(a[i][t].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)
          bi = i, bj = t;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (sgn(a[t][j]) != 0 && mpz_cmpabs(a[t][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)
          bi = t, bj = j;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(abs(a[t][t]));
  }

  // Turn the diagonal into a divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[i] = g;
      diag[j] = l;
    }
  if (max_entry_bits) *max_entry_bits = bits;
  return diag;
}

SnfResult smith_normal_form_report(const SparseIntMatrix& m, const SnfOptions& options) {
  SnfResult result;
  Eliminator<Integers> e(m, Integers{true}, options.limits);
  result.unit_pivots = e.run();
  auto residual = e.residual();

  std::vector<std::uint32_t> rows;
  for (const auto* line : residual)
    for (const auto& entry : *line) rows.push_back(entry.idx);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  result.dense_rows = rows.size();
  result.dense_cols = residual.size();
  if (result.dense_rows * result.dense_cols > options.max_dense_cells)
    throw ResourceAbort("Smith normal form residual " + std::to_string(result.dense_rows) + "x" +
                        std::to_string(result.dense_cols) + " exceeds the dense budget");

  std::vector<std::vector<BigInt>> dense(rows.size(), std::vector<BigInt>(residual.size()));
  for (std::size_t j = 0; j < residual.size(); ++j)
    for (const auto& entry : *residual[j]) {
      auto r = std::lower_bound(rows.begin(), rows.end(), entry.idx) - rows.begin();
      dense[static_cast<std::size_t>(r)][j] = entry.val;
    }
  std::size_t dense_bits = 0;
  auto tail = smith_normal_form_dense(std::move(dense), &dense_bits);
  result.max_entry_bits = std::max(dense_bits, e.ring().max_bits);
  result.invariant_factors.assign(result.unit_pivots, BigInt(1));
  result.invariant_factors.insert(result.invariant_factors.end(), tail.begin(), tail.end());
  return result;
}

}  // namespace parthom
