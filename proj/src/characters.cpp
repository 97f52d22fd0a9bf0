#include "d4syl/characters.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "d4syl/errors.hpp"
#include "d4syl/parallel.hpp"

namespace d4syl {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Exponent arithmetic for theta and theta o pi_q.
struct Exps {
  const FieldTower& c;
  std::uint32_t th(Fq b) const { return c.trace(b); }
  std::uint32_t th(Fq3 b) const { return c.trace(c.to_base(b)); }
  std::uint32_t tp(Fq3 x) const { return c.trace(c.pi_q(x)); }
  // A^q t + A t^{q^2}
  Fq3 twisted(Fq3 a, Fq3 t) const { return c.add(c.mul(c.frob(a), t), c.mul(a, c.frob2(t))); }
};

CycInt scaled_root(const FieldTower& ctx, std::uint64_t n, std::uint32_t e) {
  return CycInt::root(ctx.p(), e).scaled(static_cast<std::int64_t>(n));
}

CycInt zero(const FieldTower& ctx) { return CycInt(ctx.p(), 0); }

// Table entries for a class already known to be canonical.
CycInt table_value(const FieldTower& ctx, const CharLabel& chi, ClassFamily fam, const GroupElement& x) {
  const std::uint64_t q = ctx.q();
  const std::uint32_t p = ctx.p();
  const Exps e{ctx};
  const FieldTower& c = ctx;
  const Fq3 t1 = x.t1, t2 = c.embed(x.t2), t3 = x.t3, t4 = x.t4, t5 = c.embed(x.t5), t6 = c.embed(x.t6);
  switch (chi.family) {
    case CharFamily::Lin:
      return CycInt::root(p, e.tp(c.mul(chi.a12, t1)) + e.th(c.mul(c.embed(chi.a23), t2)));

    case CharFamily::F3: {
      switch (fam) {
        case ClassFamily::Identity:
        case ClassFamily::X6:
        case ClassFamily::X5:
        case ClassFamily::X4: return CycInt(p, static_cast<std::int64_t>(q));
        case ClassFamily::T3T5: return scaled_root(ctx, q, e.tp(c.neg(c.mul(chi.a13, t3))));
        case ClassFamily::T1T6:
        case ClassFamily::T1T3: {
          RootSum s(p);
          const Fq3 shift = c.neg(c.mul(t3, chi.a13));
          for (std::uint32_t r2 = 0; r2 < q; ++r2) {
            const Fq3 coef = c.sub(chi.a12, c.mul(chi.a13, Fq3{r2}));
            s.add(e.tp(c.add(c.mul(coef, t1), shift)));
          }
          return s.value();
        }
        default: return zero(ctx);
      }
    }

    case CharFamily::F4: {
      const std::uint64_t q3 = ipow(q, 3);
      switch (fam) {
        case ClassFamily::Identity:
        case ClassFamily::X5:
        case ClassFamily::X6: return CycInt(p, static_cast<std::int64_t>(q3));
        case ClassFamily::X4: return scaled_root(ctx, q3, e.tp(e.twisted(chi.a15, t4)));
        case ClassFamily::T2T4T5: {
          RootSum s(p);
          const Fq3 aq = c.frob(chi.a15);
          const Fq3 t4qq = c.frob2(t4);
          for (std::uint32_t r = 0; r < c.order3(); ++r) {
            const Fq3 r1{r};
            const Fq3 u = c.sub(t4, c.mul(t2, c.pow_q1(r1)));
            const Fq3 v = c.sub(t4qq, c.mul(t2, c.mul(r1, c.frob2(r1))));
            s.add(e.tp(c.add(c.mul(aq, u), c.mul(chi.a15, v))));
          }
          return s.value_shifted(e.th(c.mul(c.embed(chi.a23), t2)));
        }
        default: return zero(ctx);
      }
    }

    case CharFamily::F5: {
      const std::uint64_t q3 = ipow(q, 3);
      const Fq3 a16 = c.embed(chi.a16);
      switch (fam) {
        case ClassFamily::Identity:
        case ClassFamily::X6: return CycInt(p, static_cast<std::int64_t>(q3));
        case ClassFamily::X5: return scaled_root(ctx, q3, e.th(c.mul(a16, t5)));
        case ClassFamily::T2T4T5: {
          RootSum s(p);
          const Fq3 t4q = c.frob(t4);
          for (std::uint32_t r = 0; r < c.order3(); ++r) {
            const Fq3 r1{r};
            const Fq3 inner = c.sub(c.embed(c.phi0(c.mul(r1, t4q))), c.mul(t2, c.embed(c.norm(r1))));
            s.add(e.tp(c.mul(c.mul(chi.a13, r1), t2)) + e.th(c.mul(a16, inner)));
          }
          return s.value_shifted(e.th(c.add(c.mul(c.embed(chi.a23), t2), c.mul(a16, t5))));
        }
        case ClassFamily::T3T5: {
          RootSum s(p);
          for (std::uint32_t r = 0; r < c.order3(); ++r) {
            const Fq3 r1{r};
            const Fq3 w = c.mul(c.frob(r1), c.frob2(r1));
            s.add(e.th(c.mul(a16, c.embed(c.phi0(c.mul(t3, w))))));
          }
          return s.value_shifted(e.tp(c.neg(c.mul(chi.a13, t3))) + e.th(c.mul(a16, t5)));
        }
        default: return zero(ctx);
      }
    }

    case CharFamily::F6: {
      const std::uint64_t q4 = ipow(q, 4);
      const Fq3 a17 = c.embed(chi.a17);
      switch (fam) {
        case ClassFamily::Identity: return CycInt(p, static_cast<std::int64_t>(q4));
        case ClassFamily::X6: return scaled_root(ctx, q4, e.th(c.mul(a17, t6)));
        case ClassFamily::T1T6: {
          RootSum s(p);
          const Fq3 mt1 = c.neg(t1);
          for (std::uint32_t r = 0; r < c.order3(); ++r) {
            const Fq3 r3{r};
            const Fq3 w = c.mul(c.frob(r3), c.frob2(r3));
            s.add(e.th(c.mul(a17, c.embed(c.phi0(c.mul(mt1, w))))));
          }
          return s.value_shifted(e.tp(c.mul(chi.a12, t1)) + e.th(c.mul(a17, t6)));
        }
        default: return zero(ctx);
      }
    }
  }
  throw std::logic_error("unknown character family");
}

std::string field_list(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string_view family_name(CharFamily f) {
  constexpr std::string_view names[] = {"Lin", "F3", "F4", "F5", "F6"};
  return names[static_cast<std::size_t>(f)];
}

std::uint64_t degree(CharFamily f, std::uint64_t q) {
  switch (f) {
    case CharFamily::Lin: return 1;
    case CharFamily::F3: return q;
    case CharFamily::F4:
    case CharFamily::F5: return ipow(q, 3);
    case CharFamily::F6: return ipow(q, 4);
  }
  return 0;
}

std::uint64_t degree(const FieldTower& ctx, const CharLabel& chi) { return degree(chi.family, ctx.q()); }

std::uint64_t family_char_count(CharFamily f, std::uint64_t q) {
  const std::uint64_t q3 = q * q * q;
  switch (f) {
    case CharFamily::Lin: return q3 * q;
    case CharFamily::F3: return q * q * (q3 - 1);
    case CharFamily::F4: return q * (q3 - 1);
    case CharFamily::F5: return q3 * q * (q - 1);
    case CharFamily::F6: return q3 * (q - 1);
  }
  return 0;
}

std::string to_string(const FieldTower& ctx, const CharLabel& chi) {
  std::string body;
  switch (chi.family) {
    case CharFamily::Lin: body = field_list({{"a12", ctx.describe(chi.a12)}, {"a23", ctx.describe(chi.a23)}}); break;
    case CharFamily::F3: body = field_list({{"a13", ctx.describe(chi.a13)}, {"a12", ctx.describe(chi.a12)}}); break;
    case CharFamily::F4: body = field_list({{"a15", ctx.describe(chi.a15)}, {"a23", ctx.describe(chi.a23)}}); break;
    case CharFamily::F5:
      body = field_list({{"a16", ctx.describe(chi.a16)}, {"a23", ctx.describe(chi.a23)}, {"a13", ctx.describe(chi.a13)}});
      break;
    case CharFamily::F6: body = field_list({{"a17", ctx.describe(chi.a17)}, {"a12", ctx.describe(chi.a12)}}); break;
  }
  return std::string(family_name(chi.family)) + "(" + body + ")";
}

std::vector<CharLabel> list_irreducibles(const FieldTower& ctx) {
  const std::uint32_t q = ctx.q(), Q = ctx.order3();
  std::vector<CharLabel> out;
  for (std::uint32_t a12 = 0; a12 < Q; ++a12)
    for (std::uint32_t a23 = 0; a23 < q; ++a23) {
      CharLabel l;
      l.a12 = Fq3{a12};
      l.a23 = Fq{a23};
      out.push_back(l);
    }
  for (std::uint32_t a13 = 1; a13 < Q; ++a13) {
    const Transversal tr(ctx, Fq3{a13});
    for (std::uint32_t i = 0; i < tr.size(); ++i) {
      CharLabel l;
      l.family = CharFamily::F3;
      l.a13 = Fq3{a13};
      l.a12 = tr.at(i);
      out.push_back(l);
    }
  }
  for (std::uint32_t a15 = 1; a15 < Q; ++a15)
    for (std::uint32_t a23 = 0; a23 < q; ++a23) {
      CharLabel l;
      l.family = CharFamily::F4;
      l.a15 = Fq3{a15};
      l.a23 = Fq{a23};
      out.push_back(l);
    }
  for (std::uint32_t a16 = 1; a16 < q; ++a16)
    for (std::uint32_t a23 = 0; a23 < q; ++a23)
      for (std::uint32_t a13 = 0; a13 < Q; ++a13) {
        CharLabel l;
        l.family = CharFamily::F5;
        l.a16 = Fq{a16};
        l.a23 = Fq{a23};
        l.a13 = Fq3{a13};
        out.push_back(l);
      }
  for (std::uint32_t a17 = 1; a17 < q; ++a17)
    for (std::uint32_t a12 = 0; a12 < Q; ++a12) {
      CharLabel l;
      l.family = CharFamily::F6;
      l.a17 = Fq{a17};
      l.a12 = Fq3{a12};
      out.push_back(l);
    }
  return out;
}

CycInt char_value(const FieldTower& ctx, const CharLabel& chi, const ConjClass& c) {
  const ConjClass canon = class_from_rep(ctx, c.rep);
  if (canon.family != c.family) throw UnknownClass("class family does not match its representative");
  return table_value(ctx, chi, c.family, c.rep);
}

CycInt char_value_at(const FieldTower& ctx, const CharLabel& chi, const GroupElement& x) {
  const ConjClass c = class_of(ctx, x);
  return table_value(ctx, chi, c.family, c.rep);
}

bool in_subgroup(Subgroup s, const GroupElement& x) {
  switch (s) {
    case Subgroup::N: return x.t1.code == 0 && x.t2.code == 0 && x.t3.code == 0;
    case Subgroup::H: return x.t2.code == 0 && x.t3.code == 0;
    case Subgroup::T: return x.t1.code == 0;
  }
  return false;
}

CycInt subgroup_char_value(const FieldTower& ctx, const SubgroupCharLabel& l, const GroupElement& x) {
  if (!in_subgroup(l.subgroup, x)) throw NotInSubgroup("element " + to_string(ctx, x) + " is outside the subgroup");
  const Exps e{ctx};
  const FieldTower& c = ctx;
  const std::uint32_t p = ctx.p();
  const std::uint64_t q = ctx.q();
  const std::uint32_t e6 = e.th(c.mul(l.a17, x.t6));
  const std::uint32_t e5 = e.th(c.mul(l.a16, x.t5));
  const std::uint32_t e4 = e.tp(e.twisted(l.a15, x.t4));
  switch (l.subgroup) {
    case Subgroup::N: return CycInt::root(p, e6 + e5 + e4);
    case Subgroup::H:
      if (!l.induced) return CycInt::root(p, e6 + e4 + e.tp(c.mul(l.a12, x.t1)));
      if (x.t1.code != 0 || x.t4.code != 0) return zero(ctx);
      return scaled_root(ctx, ipow(q, 3), e6 + e5);
    case Subgroup::T:
      if (!l.induced) return CycInt::root(p, e5 + e4 + e.tp(c.neg(c.mul(l.a13, x.t3))) + e.th(c.mul(l.a23, x.t2)));
      if (x.t2.code != 0 || x.t3.code != 0 || x.t4.code != 0 || x.t5.code != 0) return zero(ctx);
      return scaled_root(ctx, ipow(q, 4), e6);
  }
  throw std::logic_error("unknown subgroup");
}

std::vector<SubgroupCharLabel> list_subgroup_irreducibles(const FieldTower& ctx, Subgroup s) {
  const std::uint32_t q = ctx.q(), Q = ctx.order3();
  std::vector<SubgroupCharLabel> out;
  SubgroupCharLabel l;
  l.subgroup = s;
  switch (s) {
    case Subgroup::N:
      for (std::uint32_t a17 = 0; a17 < q; ++a17)
        for (std::uint32_t a16 = 0; a16 < q; ++a16)
          for (std::uint32_t a15 = 0; a15 < Q; ++a15) {
            l.a17 = Fq{a17};
            l.a16 = Fq{a16};
            l.a15 = Fq3{a15};
            out.push_back(l);
          }
      break;
    case Subgroup::H:
      for (std::uint32_t a17 = 0; a17 < q; ++a17)
        for (std::uint32_t a15 = 0; a15 < Q; ++a15)
          for (std::uint32_t a12 = 0; a12 < Q; ++a12) {
            l.a17 = Fq{a17};
            l.a15 = Fq3{a15};
            l.a12 = Fq3{a12};
            out.push_back(l);
          }
      l = SubgroupCharLabel{};
      l.subgroup = s;
      l.induced = true;
      for (std::uint32_t a17 = 0; a17 < q; ++a17)
        for (std::uint32_t a16 = 1; a16 < q; ++a16) {
          l.a17 = Fq{a17};
          l.a16 = Fq{a16};
          out.push_back(l);
        }
      break;
    case Subgroup::T:
      for (std::uint32_t a16 = 0; a16 < q; ++a16)
        for (std::uint32_t a15 = 0; a15 < Q; ++a15)
          for (std::uint32_t a13 = 0; a13 < Q; ++a13)
            for (std::uint32_t a23 = 0; a23 < q; ++a23) {
              l.a16 = Fq{a16};
              l.a15 = Fq3{a15};
              l.a13 = Fq3{a13};
              l.a23 = Fq{a23};
              out.push_back(l);
            }
      l = SubgroupCharLabel{};
      l.subgroup = s;
      l.induced = true;
      for (std::uint32_t a17 = 1; a17 < q; ++a17) {
        l.a17 = Fq{a17};
        out.push_back(l);
      }
      break;
  }
  return out;
}

std::vector<CycInt> induced_values_oracle(const FieldTower& ctx, const std::vector<CharLabel>& labels,
                                          const GroupElement& x) {
  const std::uint32_t q = ctx.q(), Q = ctx.order3(), p = ctx.p();
  const Exps e{ctx};
  const FieldTower& c = ctx;
  bool need[5] = {};
  for (const auto& l : labels) need[static_cast<int>(l.family)] = true;

  std::vector<GroupElement> by_x2, by_x1, by_x2x3;
  if (need[1]) {
    for (std::uint32_t s = 0; s < q; ++s) by_x2.push_back(conjugate(ctx, root_element(ctx, 2, Fq3{s}), x));
  }
  if (need[2] || need[3]) {
    for (std::uint32_t r = 0; r < Q; ++r) by_x1.push_back(conjugate(ctx, root_element(ctx, 1, Fq3{r}), x));
  }
  if (need[4]) {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < Q; ++b) {
        const GroupElement u = multiply(ctx, root_element(ctx, 2, Fq3{a}), root_element(ctx, 3, Fq3{b}));
        const GroupElement y = conjugate(ctx, u, x);
        if (y.t2.code == 0 && y.t3.code == 0) by_x2x3.push_back(y);
      }
  }

  std::vector<CycInt> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    RootSum s(p);
    switch (l.family) {
      case CharFamily::Lin:
        s.add(e.tp(c.mul(l.a12, x.t1)) + e.th(c.mul(l.a23, x.t2)));
        break;
      case CharFamily::F3:
        for (const auto& y : by_x2)
          if (y.t2.code == 0) s.add(e.tp(c.sub(c.mul(l.a12, y.t1), c.mul(l.a13, y.t3))));
        break;
      case CharFamily::F4:
        for (const auto& y : by_x1)
          if (y.t1.code == 0) s.add(e.th(c.mul(l.a23, y.t2)) + e.tp(e.twisted(l.a15, y.t4)));
        break;
      case CharFamily::F5:
        for (const auto& y : by_x1)
          if (y.t1.code == 0)
            s.add(e.th(c.mul(l.a23, y.t2)) + e.tp(c.neg(c.mul(l.a13, y.t3))) + e.th(c.mul(l.a16, y.t5)));
        break;
      case CharFamily::F6:
        for (const auto& y : by_x2x3) s.add(e.tp(c.mul(l.a12, y.t1)) + e.th(c.mul(l.a17, y.t6)));
        break;
    }
    out.push_back(s.value());
  }
  return out;
}

CycInt induced_value_oracle(const FieldTower& ctx, const CharLabel& chi, const GroupElement& x) {
  return induced_values_oracle(ctx, {chi}, x).front();
}

CycInt induced_from_n(const FieldTower& ctx, Fq a17, const GroupElement& x) {
  const std::uint32_t q = ctx.q(), Q = ctx.order3();
  const Exps e{ctx};
  RootSum s(ctx.p());
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < Q; ++b)
      for (std::uint32_t d = 0; d < Q; ++d) {
        const GroupElement u{Fq3{b}, Fq{a}, Fq3{d}, {}, {}, {}};
        const GroupElement y = conjugate(ctx, u, x);
        if (in_subgroup(Subgroup::N, y)) s.add(e.th(ctx.mul(a17, y.t6)));
      }
  return s.value();
}

std::uint64_t inertia_order(const FieldTower& ctx, const SubgroupCharLabel& lambda, Ambient ambient, std::uint64_t cap) {
  if (lambda.subgroup != Subgroup::N || lambda.induced) throw std::invalid_argument("inertia_order expects a character of N");
  const std::uint64_t q = ctx.q(), Q = ctx.order3();
  std::uint64_t total = 0;
  switch (ambient) {
    case Ambient::U: total = ipow(q, 12); break;
    case Ambient::H: total = ipow(q, 8); break;
    case Ambient::T: total = ipow(q, 9); break;
  }
  if (total > cap) throw TooLarge("ambient group exceeds the enumeration cap");

  std::vector<GroupElement> gens;
  for (const auto& g : root_generators(ctx))
    if (in_subgroup(Subgroup::N, g)) gens.push_back(g);
  std::vector<CycInt> base;
  for (const auto& g : gens) base.push_back(subgroup_char_value(ctx, lambda, g));

  std::uint64_t count = 0;
  auto test = [&](const GroupElement& u) {
    const GroupElement ui = inverse(ctx, u);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (subgroup_char_value(ctx, lambda, multiply(ctx, multiply(ctx, u, gens[i]), ui)) != base[i]) return;
    ++count;
  };
  const std::uint64_t nq2 = ambient == Ambient::H ? 1 : q;
  const std::uint64_t nq3 = ambient == Ambient::H ? 1 : Q;
  const std::uint64_t nq1 = ambient == Ambient::T ? 1 : Q;
  for (std::uint64_t t1 = 0; t1 < nq1; ++t1)
    for (std::uint64_t t2 = 0; t2 < nq2; ++t2)
      for (std::uint64_t t3 = 0; t3 < nq3; ++t3)
        for (std::uint64_t t4 = 0; t4 < Q; ++t4)
          for (std::uint64_t t5 = 0; t5 < q; ++t5)
            for (std::uint64_t t6 = 0; t6 < q; ++t6)
              test(GroupElement{Fq3{static_cast<std::uint32_t>(t1)}, Fq{static_cast<std::uint32_t>(t2)},
                                Fq3{static_cast<std::uint32_t>(t3)}, Fq3{static_cast<std::uint32_t>(t4)},
                                Fq{static_cast<std::uint32_t>(t5)}, Fq{static_cast<std::uint32_t>(t6)}});
  return count;
}

CharacterTable::CharacterTable(const FieldTower& ctx, std::vector<CharLabel> labels, std::vector<ConjClass> classes)
    : ctx_(&ctx), labels_(std::move(labels)), classes_(std::move(classes)) {
  for (const auto& c : classes_) {
    const ConjClass canon = class_from_rep(ctx, c.rep);
    if (canon.family != c.family) throw UnknownClass("class family does not match its representative");
  }
}

void CharacterTable::store(std::size_t row, std::size_t col, const CycInt& v) {
  const std::size_t w = ctx_->p() - 1;
  const auto cs = v.coeffs();
  for (std::size_t i = 0; i < w; ++i) {
    if (cs[i] > std::numeric_limits<std::int32_t>::max() || cs[i] < std::numeric_limits<std::int32_t>::min())
      throw IntegerOverflow("table cell does not fit in 32 bits");
    cells_[(row * cols() + col) * w + i] = static_cast<std::int32_t>(cs[i]);
  }
}

void CharacterTable::materialize(unsigned workers) {
  const std::size_t w = ctx_->p() - 1;
  cells_.assign(rows() * cols() * w, 0);
  parallel_for(
      rows(),
      [&](std::size_t r) {
        for (std::size_t c = 0; c < cols(); ++c) store(r, c, table_value(*ctx_, labels_[r], classes_[c].family, classes_[c].rep));
      },
      workers);
}

CycInt CharacterTable::value(std::size_t row, std::size_t col) const {
  if (!materialized()) return table_value(*ctx_, labels_.at(row), classes_.at(col).family, classes_[col].rep);
  const std::size_t w = ctx_->p() - 1;
  std::vector<std::int64_t> cs(w);
  for (std::size_t i = 0; i < w; ++i) cs[i] = cells_[(row * cols() + col) * w + i];
  return CycInt::from_coeffs(ctx_->p(), cs);
}

void CharacterTable::set(std::size_t row, std::size_t col, const CycInt& v) {
  if (!materialized()) materialize();
  store(row, col, v);
}

std::vector<std::int64_t> CharacterTable::row_coeffs(std::size_t row) const {
  const std::size_t w = ctx_->p() - 1;
  std::vector<std::int64_t> out(cols() * w);
  for (std::size_t c = 0; c < cols(); ++c) {
    if (materialized()) {
      for (std::size_t i = 0; i < w; ++i) out[c * w + i] = cells_[(row * cols() + c) * w + i];
    } else {
      const auto v = value(row, c);
      for (std::size_t i = 0; i < w; ++i) out[c * w + i] = v.coeff(i);
    }
  }
  return out;
}

std::vector<std::int64_t> CharacterTable::col_coeffs(std::size_t col) const {
  const std::size_t w = ctx_->p() - 1;
  std::vector<std::int64_t> out(rows() * w);
  for (std::size_t r = 0; r < rows(); ++r) {
    if (materialized()) {
      for (std::size_t i = 0; i < w; ++i) out[r * w + i] = cells_[(r * cols() + col) * w + i];
    } else {
      const auto v = value(r, col);
      for (std::size_t i = 0; i < w; ++i) out[r * w + i] = v.coeff(i);
    }
  }
  return out;
}

CharacterTable build_table(const FieldTower& ctx, bool materialize, unsigned workers) {
  CharacterTable t(ctx, list_irreducibles(ctx), list_classes(ctx));
  if (materialize) t.materialize(workers);
  return t;
}

}  // namespace d4syl
