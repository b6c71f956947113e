#include "paucity/counting.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "paucity/detail/certified.hpp"
#include "paucity/errors.hpp"
#include "paucity/intfactor.hpp"

namespace paucity {

namespace {

// Rough heap cost of one std::map<BigInt, uint64_t> node with a small key.
constexpr std::size_t kMapNodeBytes = 96;
constexpr unsigned kMaxPasses = 1u << 16;

void require_k(unsigned k) {
  if (k == 0) throw DomainError("k must be at least 1");
}

BigInt factorial(unsigned n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

BigInt binomial(const BigInt& n, unsigned k) {
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

std::map<BigInt, std::uint64_t> value_counts(const std::vector<BigInt>& values) {
  std::map<BigInt, std::uint64_t> m;
  for (const auto& v : values) ++m[v];
  return m;
}

void check_map_budget(std::size_t keys, const CountOptions& opts) {
  if (keys * kMapNodeBytes > opts.memory_budget)
    throw ResourceError("product multiset: memory budget exceeded after " + std::to_string(keys) +
                        " distinct keys");
}

std::map<BigInt, std::uint64_t> convolve(const std::map<BigInt, std::uint64_t>& running,
                                         const std::map<BigInt, std::uint64_t>& base, const CountOptions& opts) {
  std::map<BigInt, std::uint64_t> out;
  BigInt prod;
  for (const auto& [v, c] : running) {
    for (const auto& [u, c2] : base) {
      mpz_mul(prod.get_mpz_t(), v.get_mpz_t(), u.get_mpz_t());
      out[prod] += c * c2;
    }
    check_map_budget(out.size(), opts);
  }
  return out;
}

std::string poly_id_of(const IntPoly& p) { return to_coeff_string(p); }

// ---------------------------------------------------------------------------
// Fixed-width multiset engine.

template <class Key>
struct Entry {
  Key key;
  std::uint64_t weight;
};

inline std::uint64_t mix(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}
inline std::uint64_t mix(u128 k) {
  return mix(static_cast<std::uint64_t>(k) ^ mix(static_cast<std::uint64_t>(k >> 64)));
}

template <class Key>
Key key_from(const BigInt& v) {
  if constexpr (sizeof(Key) == 8) {
    return to_u64(v);
  } else {
    BigInt hi = v >> 64;
    BigInt lo = v - (hi << 64);
    return (static_cast<u128>(to_u64(hi)) << 64) | to_u64(lo);
  }
}

// Calls emit(product, weight) for every multiset x_1 <= ... <= x_k of indices;
// weight = k! / prod(run length!) is the number of ordered tuples it stands for.
template <class Key, class Emit>
void enumerate_multisets(const std::vector<Key>& v, unsigned k, std::uint64_t kfact, Emit&& emit) {
  const std::size_t n = v.size();
  if (k == 1) {
    for (std::size_t j = 0; j < n; ++j) emit(v[j], 1);
    return;
  }
  struct Frame {
    Key prefix;
    std::uint64_t denom;
    unsigned run;
  };
  std::vector<std::size_t> idx(k, 0);
  std::vector<Frame> frames(k);
  // frames[l] describes the product of the first l+1 chosen elements.
  auto descend = [&](auto&& self, unsigned level) -> void {
    const Frame& f = frames[level - 1];
    const std::size_t start = idx[level - 1];
    if (level == k - 1) {
      // Innermost loop: j == start extends the last run, anything larger starts a new one.
      emit(static_cast<Key>(f.prefix * v[start]), kfact / (f.denom * (f.run + 1)));
      const std::uint64_t w = kfact / f.denom;
      for (std::size_t j = start + 1; j < n; ++j) emit(static_cast<Key>(f.prefix * v[j]), w);
      return;
    }
    for (std::size_t j = start; j < n; ++j) {
      idx[level] = j;
      Frame& g = frames[level];
      g.prefix = static_cast<Key>(f.prefix * v[j]);
      if (j == start) {
        g.run = f.run + 1;
        g.denom = f.denom * g.run;
      } else {
        g.run = 1;
        g.denom = f.denom;
      }
      self(self, level + 1);
    }
  };
  for (std::size_t j = 0; j < n; ++j) {
    idx[0] = j;
    frames[0] = {v[j], 1, 1};
    descend(descend, 1);
  }
}

struct PassResult {
  u128 sum_sq = 0;
  std::uint64_t distinct = 0;
};

template <class Key>
PassResult run_pass(const std::vector<Key>& v, unsigned k, std::uint64_t kfact, unsigned pass, unsigned passes,
                    std::vector<Entry<Key>>& buf) {
  buf.clear();
  if (passes == 1) {
    enumerate_multisets(v, k, kfact, [&](Key key, std::uint64_t w) { buf.push_back({key, w}); });
  } else {
    enumerate_multisets(v, k, kfact, [&](Key key, std::uint64_t w) {
      if (mix(key) % passes == pass) buf.push_back({key, w});
    });
  }
  std::sort(buf.begin(), buf.end(), [](const Entry<Key>& a, const Entry<Key>& b) { return a.key < b.key; });
  PassResult r;
  std::size_t i = 0;
  while (i < buf.size()) {
    std::uint64_t m = 0;
    std::size_t j = i;
    for (; j < buf.size() && buf[j].key == buf[i].key; ++j) m += buf[j].weight;
    r.sum_sq += static_cast<u128>(m) * m;
    ++r.distinct;
    i = j;
  }
  return r;
}

template <class Key>
CountStats count_fixed_width(const std::vector<BigInt>& values, unsigned k, const CountOptions& opts) {
  std::vector<Key> v;
  v.reserve(values.size());
  for (const auto& x : values) v.push_back(key_from<Key>(x));
  std::sort(v.begin(), v.end());

  const std::uint64_t kfact = to_u64(factorial(k));
  const unsigned threads = std::max(1u, opts.threads);
  const BigInt multisets = binomial(from_u64(v.size()) + k - 1, k);
  const BigInt bytes = multisets * static_cast<unsigned long>(sizeof(Entry<Key>)) * 11 / 10;
  const BigInt per_worker = from_u64(opts.memory_budget / threads);
  if (sgn(per_worker) == 0) throw ResourceError("count_A: memory budget too small");
  BigInt passes_big;
  mpz_cdiv_q(passes_big.get_mpz_t(), bytes.get_mpz_t(), per_worker.get_mpz_t());
  if (passes_big < 1) passes_big = 1;
  if (passes_big > kMaxPasses)
    throw ResourceError("count_A: " + multisets.get_str() + " multisets need more than " +
                        std::to_string(kMaxPasses) + " passes under the memory budget");
  const unsigned passes = static_cast<unsigned>(to_u64(passes_big));
  const std::size_t reserve = static_cast<std::size_t>(to_u64(multisets) / passes * 21 / 20 + 1024);

  std::vector<PassResult> results(passes);
  auto worker = [&](unsigned t) {
    std::vector<Entry<Key>> buf;
    buf.reserve(reserve);
    for (unsigned pass = t; pass < passes; pass += threads) results[pass] = run_pass(v, k, kfact, pass, passes, buf);
  };
  const unsigned used = std::min(threads, passes);
  if (used == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < used; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  // threads only decide who runs a pass, so this sum is schedule-independent
  CountStats stats;
  u128 total = 0;
  for (const auto& r : results) {
    total += r.sum_sq;
    stats.distinct_keys += r.distinct;
  }
  stats.a = from_u128(total);
  stats.passes = passes;
  stats.key_width = sizeof(Key) == 8 ? "u64" : "u128";
  return stats;
}

}  // namespace

std::vector<BigInt> box_values(const IntPoly& p, Box box) {
  std::vector<BigInt> out;
  out.reserve(box.size());
  for (std::uint64_t x = box.lo; x <= box.hi && box.size() > 0; ++x) {
    BigInt v = p(from_u64(x));
    if (sgn(v) <= 0)
      throw PreconditionError("refusing to count: P(" + std::to_string(x) + ") = " + v.get_str() +
                              " is not positive; normalize the polynomial first");
    out.push_back(std::move(v));
    if (x == box.hi) break;
  }
  return out;
}

BigInt ProductMultiset::mass() const {
  BigInt m = 0;
  for (const auto& [v, c] : counts) m += from_u64(c);
  return m;
}

BigInt ProductMultiset::sum_of_squares() const {
  BigInt s = 0;
  for (const auto& [v, c] : counts) s += from_u128(static_cast<u128>(c) * c);
  return s;
}

void ProductMultiset::merge(const ProductMultiset& other) {
  if (other.k != k || other.poly_id != poly_id || !(other.box == box))
    throw PreconditionError("ProductMultiset::merge: incompatible multisets");
  for (const auto& [v, c] : other.counts) counts[v] += c;
}

ProductMultiset product_multiset_partial(const IntPoly& p, Box box, unsigned k, Box outer,
                                         const CountOptions& opts) {
  require_k(k);
  if (outer.size() > 0 && (outer.lo < box.lo || outer.hi > box.hi))
    throw PreconditionError("product_multiset_partial: outer range not inside the box");
  const auto base = value_counts(box_values(p, box));
  auto running = value_counts(box_values(p, outer));
  // Fold the smaller-support side into the larger: running starts from the outer slice.
  for (unsigned i = 1; i < k; ++i) running = convolve(running, base, opts);
  ProductMultiset ms;
  ms.counts = std::move(running);
  ms.box = box;
  ms.k = k;
  ms.poly_id = poly_id_of(p);
  return ms;
}

ProductMultiset product_multiset(const IntPoly& p, Box box, unsigned k, const CountOptions& opts) {
  return product_multiset_partial(p, box, k, box, opts);
}

ProductMultiset product_multiset(const PolyProfile& profile, std::uint64_t n, unsigned k, const CountOptions& opts) {
  return product_multiset(profile.p, Box::upto(n), k, opts);
}

CountStats count_A_stats(const IntPoly& p, Box box, unsigned k, const CountOptions& opts) {
  require_k(k);
  if (bit_length(pow(from_u64(box.size()), k)) > 62) throw ResourceError("count_A: N^k exceeds 2^62 tuples");
  const auto values = box_values(p, box);
  if (values.empty()) return {BigInt(0), 0, 0, "u64"};
  std::size_t max_bits = 0;
  for (const auto& v : values) max_bits = std::max(max_bits, bit_length(v));
  if (max_bits * k <= 64) return count_fixed_width<std::uint64_t>(values, k, opts);
  if (max_bits * k <= 128) return count_fixed_width<u128>(values, k, opts);
  ProductMultiset ms = product_multiset(p, box, k, opts);
  return {ms.sum_of_squares(), ms.counts.size(), 1, "mpz"};
}

BigInt count_A(const IntPoly& p, Box box, unsigned k, const CountOptions& opts) {
  return count_A_stats(p, box, k, opts).a;
}

BigInt count_A(const PolyProfile& profile, std::uint64_t n, unsigned k, const CountOptions& opts) {
  return count_A(profile.p, Box::upto(n), k, opts);
}

namespace {

// Partitions of k as non-increasing part lists.
void partitions(unsigned remaining, unsigned max_part, std::vector<unsigned>& cur,
                std::vector<std::vector<unsigned>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

BigInt trivial_count(std::uint64_t n, unsigned k) {
  require_k(k);
  std::vector<std::vector<unsigned>> shapes;
  std::vector<unsigned> cur;
  partitions(k, k, cur, shapes);
  const BigInt kfact = factorial(k);
  BigInt total = 0;
  for (const auto& shape : shapes) {
    const std::size_t r = shape.size();
    if (r > n) continue;
    // injective assignments of r distinct values, up to permuting equal parts
    BigInt assignments = 1;
    for (std::size_t i = 0; i < r; ++i) assignments *= from_u64(n - i);
    std::map<unsigned, unsigned> same;
    for (unsigned part : shape) ++same[part];
    for (const auto& [part, c] : same) assignments /= factorial(c);
    BigInt arrangements = kfact;
    for (unsigned part : shape) arrangements /= factorial(part);
    total += assignments * arrangements * arrangements;
  }
  return total;
}

namespace {

struct TupleSplit {
  BigInt r_count = 0;
  BigInt nprime_count = 0;
  BigInt nontrivial = 0;
};

// Groups all N^k tuples by product and classifies every solution pair.
TupleSplit classify_solutions(const std::vector<BigInt>& values, unsigned k) {
  const std::size_t n = values.size();
  std::size_t total = 1;
  for (unsigned i = 0; i < k; ++i) total *= n;
  std::vector<std::pair<BigInt, std::size_t>> keyed;
  keyed.reserve(total);
  std::vector<std::size_t> digits(k);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    BigInt prod = 1;
    for (unsigned i = 0; i < k; ++i) {
      prod *= values[rest % n];
      rest /= n;
    }
    keyed.emplace_back(std::move(prod), t);
  }
  std::sort(keyed.begin(), keyed.end());

  auto decode = [&](std::size_t t) {
    std::vector<std::size_t> x(k);
    for (unsigned i = 0; i < k; ++i) {
      x[i] = t % n;
      t /= n;
    }
    return x;
  };
  TupleSplit split;
  std::size_t i = 0;
  while (i < keyed.size()) {
    std::size_t j = i;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
    for (std::size_t a = i; a < j; ++a) {
      const auto x = decode(keyed[a].second);
      auto xs = x;
      std::sort(xs.begin(), xs.end());
      const std::size_t mx = xs.back();
      for (std::size_t b = i; b < j; ++b) {
        const auto y = decode(keyed[b].second);
        auto ys = y;
        std::sort(ys.begin(), ys.end());
        if (xs == ys) continue;
        split.nontrivial += 1;
        const std::size_t my = ys.back();
        if (y[k - 1] != my) continue;
        if (my == mx && x[k - 1] == mx)
          split.r_count += 1;
        else if (my > mx)
          split.nprime_count += 1;
      }
    }
    i = j;
  }
  return split;
}

}  // namespace

SolutionTally tally(const PolyProfile& profile, std::uint64_t n, unsigned k, const TallyOptions& opts) {
  require_k(k);
  SolutionTally t;
  t.n = n;
  t.k = k;
  t.a_count = count_A(profile.p, Box::upto(n), k, opts.count);
  t.trivial = trivial_count(n, k);
  t.nontrivial = t.a_count - t.trivial;
  if (sgn(t.nontrivial) < 0)
    throw InconsistencyError("tally: A < trivial count for " + to_string(profile.p));
  const BigInt tuples = pow(from_u64(n), k);
  if (tuples <= from_u64(opts.enumeration_limit)) {
    TupleSplit split = classify_solutions(box_values(profile.p, Box::upto(n)), k);
    if (split.nontrivial != t.nontrivial)
      throw InconsistencyError("tally: enumerated nontrivial count " + split.nontrivial.get_str() +
                               " disagrees with A - trivial = " + t.nontrivial.get_str());
    const BigInt rhs = BigInt(k * k) * split.r_count + BigInt(2 * k) * split.nprime_count;
    if (t.nontrivial > rhs)
      throw InconsistencyError("tally: nontrivial > k^2 R + 2k N' at N=" + std::to_string(n));
    t.r_count = split.r_count;
    t.nprime_count = split.nprime_count;
  }
  return t;
}

ValueIndex::ValueIndex(const IntPoly& p, std::uint64_t n) : n_(n) {
  for (std::uint64_t x = 1; x <= n; ++x) ++counts_[p(from_u64(x))];
}

std::uint64_t ValueIndex::count(const BigInt& v) const {
  auto it = counts_.find(v);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t g_count(const ValueIndex& index, const BigInt& z, std::uint64_t lambda) {
  if (lambda == 0) throw DomainError("g_count: lambda must be positive");
  std::uint64_t count = 0;
  BigInt az, v;
  for (std::uint64_t b = 2; b <= lambda; ++b) {
    for (std::uint64_t a = 1; a < b; ++a) {
      az = z * from_u64(a);
      if (!mpz_divisible_ui_p(az.get_mpz_t(), b)) continue;
      mpz_divexact_ui(v.get_mpz_t(), az.get_mpz_t(), b);
      count += index.count(v);
    }
  }
  return count;
}

std::uint64_t g_count(const IntPoly& p, std::uint64_t n, const BigInt& z, std::uint64_t lambda) {
  return g_count(ValueIndex(p, n), z, lambda);
}

BigInt t_count(const IntPoly& p, std::uint64_t n, unsigned k, const BigInt& z) {
  require_k(k);
  if (sgn(z) <= 0) throw DomainError("t_count: z must be positive");
  const auto divs = divisors(factorize(z));
  std::map<BigInt, std::size_t> pos;
  for (std::size_t i = 0; i < divs.size(); ++i) pos.emplace(divs[i], i);

  // Transitions only see gcd(z, p(x)); group the admissible x by it.
  std::map<BigInt, std::uint64_t> by_gcd;
  for (const auto& v : box_values(p, Box::upto(n))) {
    if (v >= z) continue;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), z.get_mpz_t());
    ++by_gcd[g];
  }
  std::vector<BigInt> state(divs.size(), BigInt(0));
  state[0] = 1;  // divs[0] == 1
  BigInt zg, h;
  for (unsigned step = 0; step < k; ++step) {
    std::vector<BigInt> next(divs.size(), BigInt(0));
    for (std::size_t i = 0; i < divs.size(); ++i) {
      if (sgn(state[i]) == 0) continue;
      mpz_divexact(zg.get_mpz_t(), z.get_mpz_t(), divs[i].get_mpz_t());
      for (const auto& [g, mult] : by_gcd) {
        // gcd(z, s * v) = s * gcd(z / s, gcd(z, v)) for s | z
        mpz_gcd(h.get_mpz_t(), zg.get_mpz_t(), g.get_mpz_t());
        next[pos.at(divs[i] * h)] += state[i] * from_u64(mult);
      }
    }
    state = std::move(next);
  }
  return state.back();
}

BoundReport cor24_report(const PolyProfile& profile, std::uint64_t n, unsigned k, const BigInt& z,
                         std::uint64_t lambda, const BigRational& c) {
  if (!profile.eligible) throw PreconditionError("cor24_report: ineligible polynomial (" + profile.reason + ")");
  if (lambda == 0) throw DomainError("cor24_report: lambda must be positive");
  if (sgn(c) <= 0) throw DomainError("cor24_report: C must be positive");
  const Factorization f = factorize(z);
  const unsigned w = static_cast<unsigned>(f.pairs.size());
  const unsigned e = profile.e_p;
  const BigInt g = from_u64(g_count(profile.p, n, z, lambda));
  const BigInt tau = tau_k(f, k);
  const BigInt abs_disc = abs(profile.disc_q);
  const BigInt nb = from_u64(n);

  BoundReport r;
  r.quantity = "t_count";
  r.advisory = true;
  r.exact = t_count(profile.p, n, k, z);

  BigRational ck = 1;
  for (unsigned i = 0; i < k; ++i) ck *= c;
  // tau_k(z) (C d^w)^k
  const BigRational coeff = BigRational(tau * pow(BigInt(profile.d), static_cast<unsigned long>(w) * k)) * ck;
  const BigRational isolated = BigRational(BigInt(k) * g * pow(nb, k - 1));
  const BigRational nk(pow(nb, k));
  const BigRational nk1(pow(nb, k - 1));
  BigRational nk2 = k >= 2 ? BigRational(pow(nb, k - 2)) : BigRational(1, n);
  nk2.canonicalize();
  // |D|^(k/2) N^k z^(-1/e) = N^k (|D|^(ke) / z^2)^(1/(2e)), likewise for lambda
  const BigInt disc_ke = pow(abs_disc, static_cast<unsigned long>(k) * e);
  BigRational z_rad(disc_ke, z * z);
  z_rad.canonicalize();
  BigRational l_rad(disc_ke, from_u64(lambda) * from_u64(lambda));
  l_rad.canonicalize();
  const BigRational disc_k(pow(abs_disc, k));
  auto refine = [&](unsigned bits) {
    using detail::point;
    using detail::radical;
    detail::Interval bracket = point(nk) * radical(z_rad, 2 * e, bits) + point(nk1) * radical(l_rad, 2 * e, bits) +
                               point(nk2) * radical(disc_k, 2, bits);
    return point(isolated) + point(coeff) * bracket;
  };
  r.holds = detail::certified_leq(BigRational(r.exact), refine);
  detail::Interval b = refine(64);
  r.bound = detail::approx(b);
  if (b.exact()) r.bound_exact = b.lo;
  r.certified = f.certified;
  r.inputs = {{"N", std::to_string(n)},
              {"k", std::to_string(k)},
              {"z", z.get_str()},
              {"lambda", std::to_string(lambda)},
              {"C", c.get_str()},
              {"d", std::to_string(profile.d)},
              {"e_p", std::to_string(e)},
              {"omega", std::to_string(w)},
              {"tau_k", tau.get_str()},
              {"G", g.get_str()},
              {"disc_q", profile.disc_q.get_str()}};
  return r;
}

std::uint64_t default_lambda(std::uint64_t n) {
  BigInt r;
  BigInt nb = from_u64(n);
  mpz_root(r.get_mpz_t(), nb.get_mpz_t(), 6);
  return std::max<std::uint64_t>(1, to_u64(r));
}

std::uint64_t default_m(std::uint64_t m_p, std::uint64_t n) {
  // floor(M(P) N^(1/4)) = floor((M(P)^4 N)^(1/4))
  BigInt v = pow(from_u64(m_p), 4) * from_u64(n);
  BigInt r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), 4);
  return to_u64(r);
}

}  // namespace paucity
