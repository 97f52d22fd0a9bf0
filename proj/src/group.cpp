#include "d4syl/group.hpp"

#include <array>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "d4syl/errors.hpp"

namespace d4syl {

namespace {

// Normal-form positions: x2 x1 x3 x4 x5 x6.
constexpr std::array<int, 6> kRootAtPos = {2, 1, 3, 4, 5, 6};

// kClash[j][i]: x at position j (> i) fails to commute with x at position i.
constexpr bool kClash[6][6] = {
    {false, false, false, false, false, false},
    {true, false, false, false, false, false},
    {false, true, false, false, false, false},
    {false, true, true, false, false, false},
    {true, false, false, false, false, false},
    {false, false, false, false, false, false},
};

bool is_base_root(int index) { return index == 2 || index == 5 || index == 6; }

struct Factor {
  int pos;
  std::uint32_t value;
};

// Collection from the left: the word R * x_i(t) is rewritten as
// R' * x_i(t) * (tail conjugated by x_i(t)), where the tail holds the factors
// of R past the first one that clashes with x_i.
class Collector {
 public:
  explicit Collector(const FieldTower& ctx) : c_(ctx) {}

  std::array<std::uint32_t, 6> r{};

  void insert(int pos, std::uint32_t value) {
    if (value == 0) return;
    push(pos, value);
    while (sp_ > 0) {
      const Factor f = stack_[--sp_];
      step(f.pos, f.value);
    }
  }

 private:
  void push(int pos, std::uint32_t value) {
    assert(sp_ < static_cast<int>(stack_.size()));
    stack_[sp_++] = Factor{pos, value};
  }

  void step(int i, std::uint32_t t) {
    if (t == 0) return;
    int first = -1;
    for (int j = i + 1; j < 6; ++j) {
      if (r[j] != 0 && kClash[j][i]) {
        first = j;
        break;
      }
    }
    if (first < 0) {
      r[i] = c_.add(Fq3{r[i]}, Fq3{t}).code;
      return;
    }
    Factor tail[6];
    int n = 0;
    for (int j = first; j < 6; ++j) {
      if (r[j] != 0) tail[n++] = Factor{j, r[j]};
      r[j] = 0;
    }
    r[i] = c_.add(Fq3{r[i]}, Fq3{t}).code;
    for (int m = n; m-- > 0;) {
      Factor comm[4];
      const int nc = commutator_factors(tail[m].pos, tail[m].value, i, t, comm);
      for (int l = nc; l-- > 0;) push(comm[l].pos, comm[l].value);
      push(tail[m].pos, tail[m].value);
    }
  }

  // [x_j(s), x_i(t)] with position j after position i.
  int commutator_factors(int j, std::uint32_t sv, int i, std::uint32_t tv, Factor* out) const {
    if (!kClash[j][i]) return 0;
    const FieldTower& c = c_;
    const Fq3 s{sv};
    const Fq3 t{tv};
    const int rj = kRootAtPos[j];
    const int ri = kRootAtPos[i];
    if (rj == 1 && ri == 2) {
      const Fq3 n = c.embed(c.norm(s));
      out[0] = {2, c.neg(c.mul(t, s)).code};
      out[1] = {3, c.mul(t, c.pow_q1(s)).code};
      out[2] = {4, c.neg(c.mul(t, n)).code};
      out[3] = {5, c.mul(Fq3{2}, c.mul(c.mul(t, t), n)).code};
      return 4;
    }
    if (rj == 3 && ri == 1) {
      // inverse of [x1(t), x3(s)], which lies in the abelian X4 X5 X6
      const Fq3 tq = c.frob(t), tqq = c.frob2(t), sq = c.frob(s), sqq = c.frob2(s);
      const Fq3 a = c.add(c.mul(t, sq), c.mul(tq, s));
      const Fq3 b = c.add(c.add(c.mul(c.mul(t, tq), sqq), c.mul(c.mul(tqq, tq), s)), c.mul(c.mul(tqq, t), sq));
      const Fq3 d = c.add(c.add(c.mul(t, c.mul(sqq, sq)), c.mul(tq, c.mul(sqq, s))), c.mul(tqq, c.mul(sq, s)));
      out[0] = {3, c.neg(a).code};
      out[1] = {4, b.code};
      out[2] = {5, d.code};
      return 3;
    }
    if (rj == 4 && (ri == 1 || ri == 3)) {
      const Fq3 v = c.add(c.add(c.mul(t, c.frob(s)), c.mul(c.frob(t), c.frob2(s))), c.mul(c.frob2(t), s));
      out[0] = {ri == 1 ? 4 : 5, c.neg(v).code};
      return 1;
    }
    if (rj == 5 && ri == 2) {
      out[0] = {5, c.neg(c.mul(t, s)).code};
      return 1;
    }
    throw std::logic_error("unexpected clashing pair");
  }

  const FieldTower& c_;
  std::array<Factor, 256> stack_;
  int sp_ = 0;
};

std::array<std::uint32_t, 6> to_positions(const GroupElement& x) {
  return {x.t2.code, x.t1.code, x.t3.code, x.t4.code, x.t5.code, x.t6.code};
}

GroupElement from_positions(const std::array<std::uint32_t, 6>& r) {
  return GroupElement{Fq3{r[1]}, Fq{r[0]}, Fq3{r[2]}, Fq3{r[3]}, Fq{r[4]}, Fq{r[5]}};
}

}  // namespace

GroupElement root_element(const FieldTower& ctx, RootFactor f) { return root_element(ctx, f.index, f.value); }

GroupElement root_element(const FieldTower& ctx, int index, Fq3 value) {
  GroupElement x;
  set_coordinate(ctx, x, index, value);
  return x;
}

Fq3 coordinate(const GroupElement& x, int i) {
  switch (i) {
    case 1: return x.t1;
    case 2: return Fq3{x.t2.code};
    case 3: return x.t3;
    case 4: return x.t4;
    case 5: return Fq3{x.t5.code};
    case 6: return Fq3{x.t6.code};
    default: throw std::invalid_argument("root index must be 1..6");
  }
}

void set_coordinate(const FieldTower& ctx, GroupElement& x, int i, Fq3 value) {
  if (i < 1 || i > 6) throw std::invalid_argument("root index must be 1..6");
  if (value.code >= ctx.order3()) throw std::invalid_argument("value outside F_q^3");
  if (is_base_root(i) && !ctx.in_base(value))
    throw std::invalid_argument("x" + std::to_string(i) + " takes values in F_q");
  switch (i) {
    case 1: x.t1 = value; break;
    case 2: x.t2 = Fq{value.code}; break;
    case 3: x.t3 = value; break;
    case 4: x.t4 = value; break;
    case 5: x.t5 = Fq{value.code}; break;
    default: x.t6 = Fq{value.code}; break;
  }
}

GroupElement multiply(const FieldTower& ctx, const GroupElement& a, const GroupElement& b) {
  Collector col(ctx);
  col.r = to_positions(a);
  const auto rb = to_positions(b);
  for (int pos = 0; pos < 6; ++pos) col.insert(pos, rb[pos]);
  return from_positions(col.r);
}

GroupElement inverse(const FieldTower& ctx, const GroupElement& a) {
  Collector col(ctx);
  const auto ra = to_positions(a);
  for (int pos = 5; pos >= 0; --pos) col.insert(pos, ctx.neg(Fq3{ra[pos]}).code);
  return from_positions(col.r);
}

GroupElement commutator(const FieldTower& ctx, const GroupElement& a, const GroupElement& b) {
  return multiply(ctx, multiply(ctx, inverse(ctx, a), inverse(ctx, b)), multiply(ctx, a, b));
}

GroupElement conjugate(const FieldTower& ctx, const GroupElement& u, const GroupElement& x) {
  return multiply(ctx, multiply(ctx, u, x), inverse(ctx, u));
}

GroupElement conjugate(const FieldTower& ctx, const GroupElement& u, const GroupElement& u_inv,
                       const GroupElement& x) {
  return multiply(ctx, multiply(ctx, u, x), u_inv);
}

std::vector<RootFactor> root_commutator(const FieldTower& ctx, RootFactor xj, RootFactor xi) {
  const GroupElement a = root_element(ctx, xj);
  const GroupElement b = root_element(ctx, xi);
  const GroupElement c = commutator(ctx, a, b);
  std::vector<RootFactor> out;
  for (int pos = 0; pos < 6; ++pos) {
    const int idx = kRootAtPos[pos];
    const Fq3 v = coordinate(c, idx);
    if (v.code != 0) out.push_back(RootFactor{idx, v});
  }
  return out;
}

namespace {

// Closed conjugation formulas for u = x(r1, ..., r6).
class ClosedConjugation {
 public:
  ClosedConjugation(const FieldTower& ctx, const GroupElement& u)
      : c_(ctx), r1_(u.t1), r2_(ctx.embed(u.t2)), r3_(u.t3), r4_(u.t4), r5_(ctx.embed(u.t5)) {}

  GroupElement apply(const GroupElement& x) const {
    const bool h1 = x.t1.code != 0, h2 = x.t2.code != 0, h3 = x.t3.code != 0;
    const bool h4 = x.t4.code != 0, h5 = x.t5.code != 0, h6 = x.t6.code != 0;
    const int support = h1 | h2 << 1 | h3 << 2 | h4 << 3 | h5 << 4 | h6 << 5;
    auto within = [&](int mask) { return (support & ~mask) == 0; };
    const Fq3 t1 = x.t1, t2 = c_.embed(x.t2), t3 = x.t3, t4 = x.t4, t5 = c_.embed(x.t5);
    if (within(0b100000)) return x;
    if (support == 0b010000) return x5(t5);
    if (support == 0b001000) return x4(t4);
    if (support == 0b000100) return x3(t3);
    if (support == 0b000010) return x2(t2);
    if (support == 0b000001) return x1(t1);
    if (within(0b010100)) return x3x5(t3, t5);
    if (within(0b011010)) return x2x4x5(t2, t4, t5);
    if (within(0b000101)) return x1x3(t1, t3);
    if (within(0b000011)) return x2x1(t1, t2);
    GroupElement head = x;
    head.t3 = head.t4 = Fq3{};
    head.t5 = head.t6 = Fq{};
    GroupElement out = apply(head);
    for (int i = 3; i <= 6; ++i) {
      const Fq3 v = coordinate(x, i);
      if (v.code != 0) out = multiply(c_, out, apply(root_element(c_, i, v)));
    }
    return out;
  }

 private:
  Fq3 add(Fq3 a, Fq3 b) const { return c_.add(a, b); }
  Fq3 sub(Fq3 a, Fq3 b) const { return c_.sub(a, b); }
  Fq3 neg(Fq3 a) const { return c_.neg(a); }
  Fq3 mul(Fq3 a, Fq3 b) const { return c_.mul(a, b); }
  Fq3 mul(Fq3 a, Fq3 b, Fq3 d) const { return c_.mul(c_.mul(a, b), d); }
  Fq3 q(Fq3 a) const { return c_.frob(a); }
  Fq3 qq(Fq3 a) const { return c_.frob2(a); }
  Fq3 q1(Fq3 a) const { return c_.mul(a, c_.frob(a)); }
  Fq3 qqq(Fq3 a) const { return c_.mul(c_.frob(a), c_.frob2(a)); }
  Fq3 n(Fq3 a) const { return c_.embed(c_.norm(a)); }
  Fq3 P(Fq3 a) const { return c_.embed(c_.phi0(a)); }

  GroupElement make(Fq3 t1, Fq3 t2, Fq3 t3, Fq3 t4, Fq3 t5, Fq3 t6) const {
    return GroupElement{t1, c_.to_base(t2), t3, t4, c_.to_base(t5), c_.to_base(t6)};
  }

  GroupElement x5(Fq3 t) const { return make({}, {}, {}, {}, t, mul(r2_, t)); }

  GroupElement x4(Fq3 t) const {
    return make({}, {}, {}, t, P(mul(r1_, q(t))), add(P(mul(r1_, r2_, q(t))), P(mul(r3_, q(t)))));
  }

  Fq3 x3_t6(Fq3 t) const {
    return add(add(P(mul(qqq(r1_), r2_, t)), P(neg(mul(r1_, qqq(t))))), P(neg(mul(t, q(r4_)))));
  }

  GroupElement x3(Fq3 t) const {
    return make({}, {}, t, add(mul(r1_, q(t)), mul(q(r1_), t)), P(mul(qqq(r1_), t)), x3_t6(t));
  }

  Fq3 x2_t6(Fq3 t) const {
    const Fq3 nr = n(r1_);
    return sub(sub(neg(mul(t, r5_)), mul(t, t, nr)), mul(t, nr, r2_));
  }

  GroupElement x2(Fq3 t) const {
    return make({}, t, neg(mul(r1_, t)), neg(mul(t, q1(r1_))), neg(mul(t, n(r1_))), x2_t6(t));
  }

  Fq3 x1_t4(Fq3 t) const { return sub(sub(neg(mul(r2_, q1(t))), mul(t, q(r3_))), mul(q(t), r3_)); }
  Fq3 x1_t5(Fq3 t) const {
    const Fq3 inner = sub(neg(mul(r3_, q(t))), mul(q(r3_), t));
    return add(add(add(mul(r2_, n(t)), P(mul(qq(r1_), inner))), P(mul(qq(r3_), q1(t)))), P(neg(mul(t, q(r4_)))));
  }
  Fq3 x1_t6(Fq3 t) const {
    const Fq3 inner = sub(neg(mul(r3_, q(t))), mul(q(r3_), t));
    Fq3 v = mul(Fq3{2}, mul(r2_, r2_, n(t)));
    v = add(v, P(mul(qq(r1_), r2_, inner)));
    v = add(v, P(mul(r2_, qq(r3_), q1(t))));
    v = add(v, P(neg(mul(r2_, q(r4_), t))));
    return add(v, P(neg(mul(t, qqq(r3_)))));
  }

  GroupElement x1(Fq3 t) const { return make(t, {}, mul(r2_, t), x1_t4(t), x1_t5(t), x1_t6(t)); }

  GroupElement x3x5(Fq3 t3, Fq3 t5) const {
    return make({}, {}, t3, add(mul(r1_, q(t3)), mul(q(r1_), t3)), add(t5, P(mul(qqq(r1_), t3))),
                add(mul(r2_, t5), x3_t6(t3)));
  }

  GroupElement x2x4x5(Fq3 t2, Fq3 t4, Fq3 t5) const {
    Fq3 t6 = x2_t6(t2);
    t6 = add(add(add(t6, P(mul(r1_, r2_, q(t4)))), P(mul(r3_, q(t4)))), mul(r2_, t5));
    return make({}, t2, neg(mul(r1_, t2)), sub(t4, mul(t2, q1(r1_))),
                add(sub(t5, mul(t2, n(r1_))), P(mul(r1_, q(t4)))), t6);
  }

  GroupElement x1x3(Fq3 t1, Fq3 tb) const {
    const Fq3 t4 = add(x1_t4(t1), add(mul(r1_, q(tb)), mul(q(r1_), tb)));
    const Fq3 t5 = add(x1_t5(t1), P(mul(qqq(r1_), tb)));
    const Fq3 inner = add(add(mul(r2_, q1(t1)), mul(t1, q(r3_))), mul(q(t1), r3_));
    Fq3 t6 = add(x1_t6(t1), x3_t6(tb));
    t6 = add(t6, P(mul(qq(tb), inner)));
    return make(t1, {}, add(mul(r2_, t1), tb), t4, t5, t6);
  }

  GroupElement x2x1(Fq3 t1, Fq3 t2) const {
    const Fq3 t3 = sub(mul(r2_, t1), mul(r1_, t2));
    Fq3 t4 = sub(x1_t4(t1), mul(t2, q1(r1_)));
    t4 = add(t4, add(mul(t1, t2, q(r1_)), mul(q(t1), t2, r1_)));
    Fq3 t5 = sub(x1_t5(t1), mul(t2, n(r1_)));
    t5 = add(add(t5, P(neg(mul(r1_, qqq(t1), t2)))), P(mul(qq(t1), t2, q1(r1_))));
    Fq3 t6 = add(x1_t6(t1), x2_t6(t2));
    t6 = add(t6, P(neg(mul(Fq3{2}, mul(r1_, r2_, qqq(t1)), t2))));
    t6 = add(t6, P(mul(mul(qq(t1), t2), q1(r1_), r2_)));
    t6 = add(t6, P(mul(qqq(r1_), t1, mul(t2, t2))));
    return make(t1, t2, t3, t4, t5, t6);
  }

  const FieldTower& c_;
  Fq3 r1_, r2_, r3_, r4_, r5_;
};

}  // namespace

GroupElement conjugate_closed(const FieldTower& ctx, const GroupElement& u, const GroupElement& x) {
  return ClosedConjugation(ctx, u).apply(x);
}

std::uint64_t group_order(const FieldTower& ctx) {
  unsigned __int128 n = 1;
  for (int i = 0; i < 12; ++i) n *= ctx.q();
  if (n > ~std::uint64_t{0}) throw TooLarge("q^12 does not fit in 64 bits");
  return static_cast<std::uint64_t>(n);
}

std::uint64_t rank_of(const FieldTower& ctx, const GroupElement& x) {
  const std::uint64_t q = ctx.q(), Q = ctx.order3();
  std::uint64_t r = x.t1.code;
  r = r * q + x.t2.code;
  r = r * Q + x.t3.code;
  r = r * Q + x.t4.code;
  r = r * q + x.t5.code;
  r = r * q + x.t6.code;
  return r;
}

GroupElement element_at(const FieldTower& ctx, std::uint64_t rank) {
  const std::uint64_t q = ctx.q(), Q = ctx.order3();
  GroupElement x;
  x.t6 = Fq{static_cast<std::uint32_t>(rank % q)};
  rank /= q;
  x.t5 = Fq{static_cast<std::uint32_t>(rank % q)};
  rank /= q;
  x.t4 = Fq3{static_cast<std::uint32_t>(rank % Q)};
  rank /= Q;
  x.t3 = Fq3{static_cast<std::uint32_t>(rank % Q)};
  rank /= Q;
  x.t2 = Fq{static_cast<std::uint32_t>(rank % q)};
  rank /= q;
  x.t1 = Fq3{static_cast<std::uint32_t>(rank)};
  return x;
}

ElementRange::iterator::iterator(const FieldTower* ctx, std::uint64_t rank) : ctx_(ctx), rank_(rank) {
  current_ = element_at(*ctx, rank);
}

ElementRange::iterator& ElementRange::iterator::operator++() {
  ++rank_;
  const std::uint32_t q = ctx_->q(), Q = ctx_->order3();
  if (++current_.t6.code < q) return *this;
  current_.t6.code = 0;
  if (++current_.t5.code < q) return *this;
  current_.t5.code = 0;
  if (++current_.t4.code < Q) return *this;
  current_.t4.code = 0;
  if (++current_.t3.code < Q) return *this;
  current_.t3.code = 0;
  if (++current_.t2.code < q) return *this;
  current_.t2.code = 0;
  ++current_.t1.code;
  return *this;
}

ElementRange enumerate_all(const FieldTower& ctx, std::uint64_t cap) {
  unsigned __int128 n = 1;
  for (int i = 0; i < 12; ++i) n *= ctx.q();
  if (n > cap) throw TooLarge("q^12 exceeds the enumeration cap of " + std::to_string(cap));
  return ElementRange(ctx, static_cast<std::uint64_t>(n));
}

std::string to_string(const FieldTower& ctx, const GroupElement& x) {
  std::ostringstream os;
  os << "x(" << ctx.describe(x.t1) << ';' << ctx.describe(x.t2) << ';' << ctx.describe(x.t3) << ';'
     << ctx.describe(x.t4) << ';' << ctx.describe(x.t5) << ';' << ctx.describe(x.t6) << ')';
  return os.str();
}

namespace {

std::uint32_t parse_digits(const FieldTower& ctx, const std::string& field, std::size_t expected) {
  if (field.size() < 2 || field.front() != '[' || field.back() != ']') throw ParseError("expected [..] in '" + field + "'");
  std::vector<std::uint32_t> digits;
  std::stringstream ss(field.substr(1, field.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0 || v >= static_cast<long>(ctx.p())) throw ParseError("digit out of range");
      digits.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw ParseError("bad digit '" + item + "'");
    }
  }
  if (digits.size() != expected) throw ParseError("wrong number of digits in '" + field + "'");
  std::uint32_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) code = code * ctx.p() + digits[i];
  return code;
}

}  // namespace

GroupElement parse_element(const FieldTower& ctx, const std::string& text) {
  if (text.size() < 3 || text.rfind("x(", 0) != 0 || text.back() != ')') throw ParseError("expected x(...)");
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(2, text.size() - 3));
  std::string part;
  while (std::getline(ss, part, ';')) parts.push_back(part);
  if (parts.size() != 6) throw ParseError("expected six coordinates");
  const std::size_t k = ctx.k();
  GroupElement x;
  x.t1 = Fq3{parse_digits(ctx, parts[0], 3 * k)};
  x.t2 = Fq{parse_digits(ctx, parts[1], k)};
  x.t3 = Fq3{parse_digits(ctx, parts[2], 3 * k)};
  x.t4 = Fq3{parse_digits(ctx, parts[3], 3 * k)};
  x.t5 = Fq{parse_digits(ctx, parts[4], k)};
  x.t6 = Fq{parse_digits(ctx, parts[5], k)};
  return x;
}

}  // namespace d4syl
