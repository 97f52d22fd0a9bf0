#include "d4syl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "d4syl/errors.hpp"
#include "d4syl/parallel.hpp"

namespace d4syl {

namespace {

using i128 = __int128;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string s;
  while (v != 0) {
    const int d = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (negative ? -d : d)));
    v /= 10;
  }
  if (negative) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 ipow128(std::uint64_t b, int e) {
  i128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Canonical coefficients of sum_k a_k conj(b_k) where a, b are flat arrays
// of p-1 coefficients per entry and a is pre-weighted.
std::vector<i128> hermitian(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::uint32_t p) {
  const std::size_t w = p - 1;
  std::vector<i128> acc(p, 0);
  const std::size_t n = a.size() / w;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t* x = &a[k * w];
    const std::int64_t* y = &b[k * w];
    for (std::size_t s = 0; s < w; ++s) {
      if (x[s] == 0) continue;
      for (std::size_t t = 0; t < w; ++t) {
        if (y[t] == 0) continue;
        acc[(s + p - t) % p] += static_cast<i128>(x[s]) * y[t];
      }
    }
  }
  std::vector<i128> out(w);
  for (std::size_t e = 0; e < w; ++e) out[e] = acc[e] - acc[p - 1];
  return out;
}

std::string render(const std::vector<i128>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

std::vector<std::size_t> choose_indices(std::size_t n, const OrthogonalityOptions& opt) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (opt.full) return idx;
  std::size_t m = 1;
  while (m < n && m * (m + 1) / 2 < opt.sample_pairs) ++m;
  std::mt19937_64 rng(opt.seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

struct Failure {
  std::size_t a = ~std::size_t{0};
  std::size_t b = 0;
  std::string text;
};

// Runs the pairwise Hermitian products over the chosen vectors and keeps the
// failure with the smallest (a, b), so the report does not depend on the
// schedule.
template <class Vectors, class Expected, class Describe>
VerificationReport pairwise(const char* name, const std::vector<std::size_t>& idx, const Vectors& vectors,
                            std::uint32_t p, Expected expected, Describe describe, unsigned workers) {
  Stopwatch sw;
  VerificationReport rep;
  rep.name = name;
  std::vector<Failure> first(idx.size());
  parallel_for(
      idx.size(),
      [&](std::size_t i) {
        for (std::size_t j = i; j < idx.size(); ++j) {
          const auto got = hermitian(vectors.weighted[i], vectors.plain[j], p);
          std::vector<i128> want(p - 1, 0);
          want[0] = expected(idx[i], idx[j]);
          if (got != want) {
            first[i] = Failure{idx[i], idx[j], describe(idx[i], idx[j]) + ": got " + render(got) + ", expected " + render(want)};
            return;
          }
        }
      },
      workers);
  for (const auto& f : first) {
    if (!f.text.empty()) {
      rep.passed = false;
      rep.counterexample = f.text;
      break;
    }
  }
  const std::size_t m = idx.size();
  rep.detail = std::to_string(m * (m + 1) / 2) + " pairs";
  rep.seconds = sw.seconds();
  return rep;
}

struct VectorSet {
  std::vector<std::vector<std::int64_t>> weighted;
  std::vector<std::vector<std::int64_t>> plain;
};

}  // namespace

VerificationReport verify_row_orthogonality(const CharacterTable& table, const OrthogonalityOptions& opt) {
  const FieldTower& ctx = table.ctx();
  const std::uint32_t p = ctx.p();
  const auto idx = choose_indices(table.rows(), opt);
  VectorSet v;
  v.plain.resize(idx.size());
  v.weighted.resize(idx.size());
  parallel_for(
      idx.size(),
      [&](std::size_t i) {
        v.plain[i] = table.row_coeffs(idx[i]);
        v.weighted[i] = v.plain[i];
        for (std::size_t c = 0; c < table.cols(); ++c)
          for (std::size_t s = 0; s + 1 < p; ++s) v.weighted[i][c * (p - 1) + s] *= static_cast<std::int64_t>(table.classes()[c].size);
      },
      opt.workers);
  const i128 order = ipow128(ctx.q(), 12);
  auto rep = pairwise(
      "row orthogonality", idx, v, p, [&](std::size_t a, std::size_t b) { return a == b ? order : i128{0}; },
      [&](std::size_t a, std::size_t b) {
        return "<" + to_string(ctx, table.labels()[a]) + ", " + to_string(ctx, table.labels()[b]) + ">";
      },
      opt.workers);
  if (!opt.full) rep.detail += " (sampled, seed " + std::to_string(opt.seed) + ")";
  return rep;
}

VerificationReport verify_column_orthogonality(const CharacterTable& table, const OrthogonalityOptions& opt) {
  const FieldTower& ctx = table.ctx();
  const std::uint32_t p = ctx.p();
  const auto idx = choose_indices(table.cols(), opt);
  VectorSet v;
  v.plain.resize(idx.size());
  parallel_for(idx.size(), [&](std::size_t i) { v.plain[i] = table.col_coeffs(idx[i]); }, opt.workers);
  v.weighted = v.plain;
  const i128 order = ipow128(ctx.q(), 12);
  auto rep = pairwise(
      "column orthogonality", idx, v, p,
      [&](std::size_t a, std::size_t b) { return a == b ? order / table.classes()[a].size : i128{0}; },
      [&](std::size_t a, std::size_t b) {
        return "columns " + to_string(ctx, table.classes()[a].rep) + " and " + to_string(ctx, table.classes()[b].rep);
      },
      opt.workers);
  if (!opt.full) rep.detail += " (sampled, seed " + std::to_string(opt.seed) + ")";
  return rep;
}

VerificationReport verify_counts(const FieldTower& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.name = "count polynomials q=" + std::to_string(ctx.q());
  const i128 q = ctx.q();
  const i128 m = q - 1;
  std::ostringstream fail;
  auto expect = [&](const std::string& what, i128 got, i128 want) {
    if (got != want && fail.str().empty()) fail << what << ": got " << to_string(got) << ", expected " << to_string(want);
  };
  auto expansion = [&](std::initializer_list<int> coeffs) {
    i128 v = 0;
    for (int c : coeffs) v = v * m + c;
    return v;
  };

  const auto classes = list_classes(ctx);
  const auto labels = list_irreducibles(ctx);
  const i128 total = 2 * q * q * q * q * q + 2 * q * q * q * q - q * q * q - q * q - q;
  expect("#classes", classes.size(), total);
  expect("#classes, (q-1)-expansion", classes.size(), expansion({2, 12, 27, 28, 12, 1}));
  expect("#Irr", labels.size(), total);

  std::map<ClassFamily, i128> by_family;
  i128 mass = 0;
  for (const auto& c : classes) {
    by_family[c.family] += 1;
    mass += c.size;
    if (c.size != family_class_size(c.family, ctx.q())) expect("class size in " + std::string(family_name(c.family)), c.size, family_class_size(c.family, ctx.q()));
  }
  for (auto f : kClassFamilies) expect("#classes in " + std::string(family_name(f)), by_family[f], family_class_count(f, ctx.q()));
  expect("sum of class sizes", mass, ipow128(ctx.q(), 12));

  std::map<CharFamily, i128> by_char_family;
  std::map<std::uint64_t, i128> by_degree;
  for (const auto& l : labels) {
    by_char_family[l.family] += 1;
    by_degree[degree(ctx, l)] += 1;
  }
  for (auto f : {CharFamily::Lin, CharFamily::F3, CharFamily::F4, CharFamily::F5, CharFamily::F6})
    expect("#" + std::string(family_name(f)), by_char_family[f], family_char_count(f, ctx.q()));
  const std::uint64_t uq = ctx.q();
  expect("#Irr_0", by_degree[1], q * q * q * q);
  expect("#Irr_0, (q-1)-expansion", by_degree[1], expansion({1, 4, 6, 4, 1}));
  expect("#Irr_1", by_degree[uq], q * q * q * q * q - q * q);
  expect("#Irr_1, (q-1)-expansion", by_degree[uq], expansion({1, 5, 10, 9, 3, 0}));
  expect("#Irr_3", by_degree[uq * uq * uq], q * q * q * q * q - q);
  expect("#Irr_3, (q-1)-expansion", by_degree[uq * uq * uq], expansion({1, 5, 10, 10, 4, 0}));
  expect("#Irr_4", by_degree[uq * uq * uq * uq], q * q * q * q - q * q * q);
  expect("#Irr_4, (q-1)-expansion", by_degree[uq * uq * uq * uq], expansion({1, 3, 3, 1, 0}));
  expect("#Irr of other degrees", static_cast<i128>(labels.size()) - by_degree[1] - by_degree[uq] - by_degree[uq * uq * uq] - by_degree[uq * uq * uq * uq], 0);

  rep.counterexample = fail.str();
  rep.passed = rep.counterexample.empty();
  rep.detail = std::to_string(classes.size()) + " classes, " + std::to_string(labels.size()) + " characters";
  rep.seconds = sw.seconds();
  return rep;
}

VerificationReport verify_degrees(const FieldTower& ctx) {
  Stopwatch sw;
  VerificationReport rep;
  rep.name = "degree identity q=" + std::to_string(ctx.q());
  i128 sum = 0;
  for (const auto& l : list_irreducibles(ctx)) {
    const i128 d = degree(ctx, l);
    sum += d * d;
  }
  const i128 want = ipow128(ctx.q(), 12);
  if (sum != want) {
    rep.passed = false;
    rep.counterexample = "sum of squared degrees " + to_string(sum) + " != " + to_string(want);
  }
  rep.detail = "sum deg^2 = " + to_string(sum);
  rep.seconds = sw.seconds();
  return rep;
}

VerificationReport verify_class_census(const FieldTower& ctx, std::uint64_t cap) {
  Stopwatch sw;
  VerificationReport rep;
  rep.name = "class census";
  const OrbitPartition part = brute_force_classes(ctx, cap);
  const auto classes = list_classes(ctx);
  std::ostringstream fail;
  if (part.label.size() != classes.size())
    fail << part.label.size() << " orbits but " << classes.size() << " listed classes";

  std::vector<std::int64_t> orbit_class(part.label.size(), -1);
  for (const auto& c : classes) {
    if (!fail.str().empty()) break;
    const std::uint32_t o = part.orbit_of[rank_of(ctx, c.rep)];
    if (orbit_class[o] >= 0) {
      fail << "classes " << orbit_class[o] << " and " << c.index << " share an orbit";
    } else if (part.size[o] != c.size) {
      fail << "class " << c.index << " " << to_string(ctx, c.rep) << ": orbit size " << part.size[o] << ", listed " << c.size;
    }
    orbit_class[o] = c.index;
  }

  if (fail.str().empty()) {
    std::mutex m;
    std::uint64_t first_bad = ~std::uint64_t{0};
    const std::uint64_t n = part.orbit_of.size();
    const std::uint64_t block = 4096;
    parallel_for((n + block - 1) / block, [&](std::size_t b) {
      for (std::uint64_t r = b * block; r < std::min(n, (b + 1) * block); ++r) {
        const ConjClass c = class_of(ctx, element_at(ctx, r));
        if (static_cast<std::int64_t>(c.index) != orbit_class[part.orbit_of[r]]) {
          std::lock_guard lock(m);
          first_bad = std::min(first_bad, r);
          return;
        }
      }
    });
    if (first_bad != ~std::uint64_t{0}) {
      const GroupElement x = element_at(ctx, first_bad);
      fail << "class_of(" << to_string(ctx, x) << ") = class " << class_of(ctx, x).index << ", orbit says class "
           << orbit_class[part.orbit_of[first_bad]];
    }
  }

  std::map<std::pair<ClassFamily, std::uint64_t>, std::uint64_t> dist;
  for (const auto& c : classes) dist[{c.family, c.size}] += 1;
  std::ostringstream detail;
  detail << part.label.size() << " orbits over " << part.orbit_of.size() << " elements;";
  for (const auto& [key, count] : dist) detail << ' ' << family_name(key.first) << ':' << count << 'x' << key.second;
  rep.detail = detail.str();
  rep.counterexample = fail.str();
  rep.passed = rep.counterexample.empty();
  rep.seconds = sw.seconds();
  return rep;
}

VerificationReport verify_oracle_values(const CharacterTable& table, std::uint64_t cap) {
  Stopwatch sw;
  const FieldTower& ctx = table.ctx();
  if (group_order(ctx) > cap) throw TooLarge("induction oracle is capped at |U| <= " + std::to_string(cap));
  VerificationReport rep;
  rep.name = "oracle values";
  std::vector<Failure> first(table.cols());
  parallel_for(table.cols(), [&](std::size_t col) {
    const auto values = induced_values_oracle(ctx, table.labels(), table.classes()[col].rep);
    for (std::size_t row = 0; row < table.rows(); ++row) {
      const CycInt have = table.value(row, col);
      if (values[row] != have) {
        first[col] = Failure{row, col,
                             "chi=" + to_string(ctx, table.labels()[row]) + " C=" + to_string(ctx, table.classes()[col].rep) +
                                 ": table " + have.to_string() + ", oracle " + values[row].to_string()};
        return;
      }
    }
  });
  const Failure* best = nullptr;
  for (const auto& f : first)
    if (!f.text.empty() && (!best || f.a < best->a)) best = &f;
  if (best) {
    rep.passed = false;
    rep.counterexample = best->text;
  }
  rep.detail = std::to_string(table.rows() * table.cols()) + " cells";
  rep.seconds = sw.seconds();
  return rep;
}

VerificationReport verify_conjugation(const FieldTower& ctx, std::uint64_t random_pairs, bool all_reps, std::uint64_t seed,
                                      unsigned workers) {
  Stopwatch sw;
  VerificationReport rep;
  rep.name = "closed conjugation";
  std::ostringstream fail;
  auto mismatch = [&](const GroupElement& u, const GroupElement& x) {
    fail << "u=" << to_string(ctx, u) << " x=" << to_string(ctx, x);
  };

  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < random_pairs && fail.str().empty(); ++i) {
    const GroupElement u = random_element(ctx, rng);
    const GroupElement x = random_element(ctx, rng);
    if (conjugate(ctx, u, x) != conjugate_closed(ctx, u, x)) mismatch(u, x);
  }
  std::uint64_t checked = random_pairs;

  if (all_reps && fail.str().empty()) {
    const auto classes = list_classes(ctx);
    const ElementRange all = enumerate_all(ctx);
    const std::uint64_t n = all.size();
    const std::uint64_t block = 1024;
    std::mutex m;
    std::uint64_t first_bad = ~std::uint64_t{0};
    std::size_t bad_class = 0;
    parallel_for(
        (n + block - 1) / block,
        [&](std::size_t b) {
          for (std::uint64_t r = b * block; r < std::min(n, (b + 1) * block); ++r) {
            const GroupElement u = element_at(ctx, r);
            const GroupElement ui = inverse(ctx, u);
            for (std::size_t c = 0; c < classes.size(); ++c) {
              const GroupElement& x = classes[c].rep;
              if (conjugate(ctx, u, ui, x) != conjugate_closed(ctx, u, x)) {
                std::lock_guard lock(m);
                if (r < first_bad) {
                  first_bad = r;
                  bad_class = c;
                }
                return;
              }
            }
          }
        },
        workers);
    if (first_bad != ~std::uint64_t{0}) mismatch(element_at(ctx, first_bad), classes[bad_class].rep);
    checked += n * classes.size();
  }
  rep.counterexample = fail.str();
  rep.passed = rep.counterexample.empty();
  rep.detail = std::to_string(checked) + " pairs";
  rep.seconds = sw.seconds();
  return rep;
}

std::vector<VerificationReport> verify_against_oracles(const CharacterTable& table, std::uint64_t cap) {
  const FieldTower& ctx = table.ctx();
  if (group_order(ctx) > cap) throw TooLarge("oracles are capped at |U| <= " + std::to_string(cap));
  std::vector<VerificationReport> out;
  out.push_back(verify_class_census(ctx, cap));
  out.push_back(verify_oracle_values(table, cap));
  out.push_back(verify_conjugation(ctx, 100000, false));

  Stopwatch sw;
  VerificationReport reps;
  reps.name = "closed conjugation on class representatives";
  const auto& classes = table.classes();
  std::mt19937_64 rng(2);
  const int trials = 64;
  for (int i = 0; i < trials && reps.passed; ++i) {
    const GroupElement u = random_element(ctx, rng);
    for (const auto& c : classes) {
      if (conjugate(ctx, u, c.rep) != conjugate_closed(ctx, u, c.rep)) {
        reps.passed = false;
        reps.counterexample = "u=" + to_string(ctx, u) + " x=" + to_string(ctx, c.rep);
        break;
      }
    }
  }
  reps.detail = std::to_string(trials * classes.size()) + " pairs";
  reps.seconds = sw.seconds();
  out.push_back(reps);
  return out;
}

}  // namespace d4syl
