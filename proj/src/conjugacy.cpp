#include "d4syl/conjugacy.hpp"

#include <deque>
#include <stdexcept>

#include "d4syl/errors.hpp"

namespace d4syl {

namespace {

constexpr std::array<std::string_view, 9> kFamilyNames = {"Identity", "X6",     "X5",   "X4",  "T3T5",
                                                          "T2T4T5",   "T1T6", "T1T3", "T1T2"};

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t family_offset(ClassFamily f, std::uint64_t q) {
  std::uint64_t off = 0;
  for (auto g : kClassFamilies) {
    if (g == f) break;
    off += family_class_count(g, q);
  }
  return off;
}

ConjClass make_class(const FieldTower& ctx, ClassFamily f, const GroupElement& rep, std::uint64_t ordinal) {
  const std::uint64_t q = ctx.q();
  return ConjClass{f, rep, family_class_size(f, q), static_cast<std::uint32_t>(family_offset(f, q) + ordinal)};
}

bool only(const GroupElement& x, std::initializer_list<int> allowed) {
  for (int i = 1; i <= 6; ++i) {
    bool ok = false;
    for (int a : allowed) ok = ok || a == i;
    if (!ok && coordinate(x, i).code != 0) return false;
  }
  return true;
}

// Canonical class for a representative already in normal shape.
ConjClass classify_rep(const FieldTower& ctx, const GroupElement& x) {
  const std::uint64_t q = ctx.q(), Q = ctx.order3();
  const std::uint64_t t1 = x.t1.code, t2 = x.t2.code, t3 = x.t3.code, t4 = x.t4.code, t5 = x.t5.code, t6 = x.t6.code;
  if (t1 != 0 && t2 != 0 && only(x, {1, 2})) return make_class(ctx, ClassFamily::T1T2, x, (t1 - 1) * (q - 1) + (t2 - 1));
  if (t1 != 0 && t2 == 0 && t3 != 0 && only(x, {1, 3})) {
    const Transversal tr(ctx, x.t1);
    const auto [rep, s] = tr.decompose(x.t3);
    if (rep != x.t3) throw UnknownClass("x3 coordinate is not a transversal element");
    return make_class(ctx, ClassFamily::T1T3, x, (t1 - 1) * (q * q - 1) + tr.rank(rep) - 1);
  }
  if (t1 != 0 && only(x, {1, 6})) return make_class(ctx, ClassFamily::T1T6, x, (t1 - 1) * q + t6);
  if (t1 == 0 && t2 != 0 && only(x, {2, 4, 5}))
    return make_class(ctx, ClassFamily::T2T4T5, x, ((t2 - 1) * Q + t4) * q + t5);
  if (t1 == 0 && t2 == 0 && t3 != 0 && only(x, {3, 5})) return make_class(ctx, ClassFamily::T3T5, x, (t3 - 1) * q + t5);
  if (t4 != 0 && only(x, {4})) return make_class(ctx, ClassFamily::X4, x, t4 - 1);
  if (t5 != 0 && only(x, {5})) return make_class(ctx, ClassFamily::X5, x, t5 - 1);
  if (t6 != 0 && only(x, {6})) return make_class(ctx, ClassFamily::X6, x, t6 - 1);
  if (x.is_identity()) return make_class(ctx, ClassFamily::Identity, x, 0);
  throw UnknownClass("not a canonical representative: " + to_string(ctx, x));
}

}  // namespace

std::string_view family_name(ClassFamily f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

ClassFamily parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i)
    if (kFamilyNames[i] == name) return kClassFamilies[i];
  throw ParseError("unknown class family '" + std::string(name) + "'");
}

std::uint64_t family_class_count(ClassFamily f, std::uint64_t q) {
  const std::uint64_t Q1 = q * q * q - 1;
  switch (f) {
    case ClassFamily::Identity: return 1;
    case ClassFamily::X6: return q - 1;
    case ClassFamily::X5: return q - 1;
    case ClassFamily::X4: return Q1;
    case ClassFamily::T3T5: return Q1 * q;
    case ClassFamily::T2T4T5: return (q - 1) * ipow(q, 4);
    case ClassFamily::T1T6: return Q1 * q;
    case ClassFamily::T1T3: return Q1 * (q * q - 1);
    case ClassFamily::T1T2: return (q - 1) * Q1;
  }
  return 0;
}

std::uint64_t family_class_size(ClassFamily f, std::uint64_t q) {
  switch (f) {
    case ClassFamily::Identity: return 1;
    case ClassFamily::X6: return 1;
    case ClassFamily::X5: return q;
    case ClassFamily::X4: return q * q;
    case ClassFamily::T3T5: return ipow(q, 4);
    case ClassFamily::T2T4T5: return ipow(q, 4);
    case ClassFamily::T1T6: return ipow(q, 5);
    case ClassFamily::T1T3: return ipow(q, 6);
    case ClassFamily::T1T2: return ipow(q, 8);
  }
  return 0;
}

std::vector<ConjClass> list_classes(const FieldTower& ctx) {
  const std::uint32_t q = ctx.q(), Q = ctx.order3();
  std::vector<ConjClass> out;
  std::uint64_t total = 0;
  for (auto f : kClassFamilies) total += family_class_count(f, q);
  out.reserve(total);
  auto emit = [&](ClassFamily f, const GroupElement& rep) {
    out.push_back(ConjClass{f, rep, family_class_size(f, q), static_cast<std::uint32_t>(out.size())});
  };
  emit(ClassFamily::Identity, GroupElement{});
  for (std::uint32_t t = 1; t < q; ++t) emit(ClassFamily::X6, GroupElement{{}, {}, {}, {}, {}, Fq{t}});
  for (std::uint32_t t = 1; t < q; ++t) emit(ClassFamily::X5, GroupElement{{}, {}, {}, {}, Fq{t}, {}});
  for (std::uint32_t t = 1; t < Q; ++t) emit(ClassFamily::X4, GroupElement{{}, {}, {}, Fq3{t}, {}, {}});
  for (std::uint32_t t3 = 1; t3 < Q; ++t3)
    for (std::uint32_t t5 = 0; t5 < q; ++t5) emit(ClassFamily::T3T5, GroupElement{{}, {}, Fq3{t3}, {}, Fq{t5}, {}});
  for (std::uint32_t t2 = 1; t2 < q; ++t2)
    for (std::uint32_t t4 = 0; t4 < Q; ++t4)
      for (std::uint32_t t5 = 0; t5 < q; ++t5)
        emit(ClassFamily::T2T4T5, GroupElement{{}, Fq{t2}, {}, Fq3{t4}, Fq{t5}, {}});
  for (std::uint32_t t1 = 1; t1 < Q; ++t1)
    for (std::uint32_t t6 = 0; t6 < q; ++t6) emit(ClassFamily::T1T6, GroupElement{Fq3{t1}, {}, {}, {}, {}, Fq{t6}});
  for (std::uint32_t t1 = 1; t1 < Q; ++t1) {
    const Transversal tr(ctx, Fq3{t1});
    for (std::uint32_t i = 1; i < tr.size(); ++i) emit(ClassFamily::T1T3, GroupElement{Fq3{t1}, {}, tr.at(i), {}, {}, {}});
  }
  for (std::uint32_t t1 = 1; t1 < Q; ++t1)
    for (std::uint32_t t2 = 1; t2 < q; ++t2) emit(ClassFamily::T1T2, GroupElement{Fq3{t1}, Fq{t2}, {}, {}, {}, {}});
  return out;
}

GroupElement kill_coordinate(const FieldTower& ctx, const GroupElement& y, int index, int coord) {
  const Fq3 target = coordinate(y, coord);
  if (target.code == 0) return y;
  const bool base = index == 2 || index == 5 || index == 6;
  const std::size_t unknowns = (base ? 1 : 3) * ctx.k();
  const std::size_t eqs = 3 * ctx.k();
  const auto f0 = ctx.fp_coords(target);
  FpMatrix m(eqs, unknowns, ctx.p());
  std::uint32_t basis = 1;
  for (std::size_t c = 0; c < unknowns; ++c, basis *= ctx.p()) {
    const GroupElement u = root_element(ctx, index, Fq3{basis});
    const auto v = ctx.fp_coords(ctx.sub(coordinate(conjugate(ctx, u, y), coord), target));
    m.set_column(c, v);
  }
  std::vector<std::uint32_t> rhs(eqs);
  for (std::size_t i = 0; i < eqs; ++i) rhs[i] = (ctx.p() - f0[i]) % ctx.p();
  const auto r = m.solve(rhs);
  if (!r) throw std::logic_error("no conjugator in X" + std::to_string(index) + " clears coordinate " + std::to_string(coord));
  const GroupElement out = conjugate(ctx, root_element(ctx, index, ctx.from_fp_coords(*r)), y);
  if (coordinate(out, coord).code != 0) throw std::logic_error("conjugation is not affine in the chosen coordinate");
  return out;
}

ConjClass class_of(const FieldTower& ctx, const GroupElement& x) {
  if (x.t1.code != 0 && x.t2.code != 0) return classify_rep(ctx, GroupElement{x.t1, x.t2, {}, {}, {}, {}});
  if (x.t1.code != 0) {
    const Transversal tr(ctx, x.t1);
    const auto [rep, s] = tr.decompose(x.t3);
    if (rep.code != 0) return classify_rep(ctx, GroupElement{x.t1, {}, rep, {}, {}, {}});
    GroupElement y = kill_coordinate(ctx, x, 2, 3);
    y = kill_coordinate(ctx, y, 3, 4);
    y = kill_coordinate(ctx, y, 4, 5);
    return classify_rep(ctx, y);
  }
  if (x.t2.code != 0) {
    GroupElement y = kill_coordinate(ctx, x, 1, 3);
    y = kill_coordinate(ctx, y, 5, 6);
    return classify_rep(ctx, y);
  }
  if (x.t3.code != 0) {
    GroupElement y = kill_coordinate(ctx, x, 1, 4);
    y = kill_coordinate(ctx, y, 4, 6);
    return classify_rep(ctx, y);
  }
  if (x.t4.code != 0) return classify_rep(ctx, GroupElement{{}, {}, {}, x.t4, {}, {}});
  if (x.t5.code != 0) return classify_rep(ctx, GroupElement{{}, {}, {}, {}, x.t5, {}});
  return classify_rep(ctx, x);
}

ConjClass class_from_rep(const FieldTower& ctx, const GroupElement& rep) { return classify_rep(ctx, rep); }

std::uint64_t centralizer_order(const FieldTower& ctx, const ConjClass& c) { return group_order(ctx) / c.size; }

std::vector<GroupElement> root_generators(const FieldTower& ctx) {
  std::vector<GroupElement> gens;
  for (int i = 1; i <= 6; ++i) {
    const bool base = i == 2 || i == 5 || i == 6;
    const std::uint32_t n = (base ? 1 : 3) * ctx.k();
    std::uint32_t basis = 1;
    for (std::uint32_t m = 0; m < n; ++m, basis *= ctx.p()) gens.push_back(root_element(ctx, i, Fq3{basis}));
  }
  return gens;
}

OrbitPartition brute_force_classes(const FieldTower& ctx, std::uint64_t cap) {
  const ElementRange all = enumerate_all(ctx, cap);
  const std::uint64_t n = all.size();
  const auto gens = root_generators(ctx);
  std::vector<GroupElement> gens_inv;
  for (const auto& g : gens) gens_inv.push_back(inverse(ctx, g));

  constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  OrbitPartition out;
  out.orbit_of.assign(n, kUnseen);
  std::vector<std::uint64_t> queue;
  for (std::uint64_t seed = 0; seed < n; ++seed) {
    if (out.orbit_of[seed] != kUnseen) continue;
    const auto id = static_cast<std::uint32_t>(out.label.size());
    queue.clear();
    queue.push_back(seed);
    out.orbit_of[seed] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const GroupElement x = element_at(ctx, queue[head]);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::uint64_t r = rank_of(ctx, conjugate(ctx, gens[g], gens_inv[g], x));
        if (out.orbit_of[r] == kUnseen) {
          out.orbit_of[r] = id;
          queue.push_back(r);
        }
      }
    }
    out.label.push_back(seed);
    out.size.push_back(queue.size());
  }
  return out;
}

}  // namespace d4syl
