#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "d4syl/conjugacy.hpp"
#include "d4syl/cyclotomic.hpp"

namespace d4syl {

enum class CharFamily : std::uint8_t { Lin, F3, F4, F5, F6 };

std::string_view family_name(CharFamily f);

/// Parameters of an irreducible character. Unused fields stay zero.
///   Lin: a12, a23          F3: a13 != 0, a12 = the transversal element
///   F4:  a15 != 0, a23     F5: a16 != 0, a23, a13
///   F6:  a17 != 0, a12
struct CharLabel {
  CharFamily family = CharFamily::Lin;
  Fq3 a12;
  Fq a23;
  Fq3 a13;
  Fq3 a15;
  Fq a16;
  Fq a17;

  auto operator<=>(const CharLabel&) const = default;
};

std::uint64_t degree(const FieldTower& ctx, const CharLabel& chi);
std::uint64_t degree(CharFamily f, std::uint64_t q);
std::uint64_t family_char_count(CharFamily f, std::uint64_t q);

/// "F3(a13=[..],a12=[..])" style description.
std::string to_string(const FieldTower& ctx, const CharLabel& chi);

/// Families Lin, F3, F4, F5, F6; parameters in increasing code order, in
/// the order they are listed above (F5: a16, then a23, then a13).
std::vector<CharLabel> list_irreducibles(const FieldTower& ctx);

/// Value of chi on a canonical class. Throws UnknownClass when c.rep is not
/// a canonical representative.
CycInt char_value(const FieldTower& ctx, const CharLabel& chi, const ConjClass& c);
CycInt char_value_at(const FieldTower& ctx, const CharLabel& chi, const GroupElement& x);

/// Characters of N = X4X5X6, H = X1X4X5X6 and T = X2X3X4X5X6.
enum class Subgroup : std::uint8_t { N, H, T };

/// N:         lambda^{a17,a16,a15}
/// H linear:  chi~^{a17,a15,a12}      H induced: Ind_N^H lambda^{a17,a16,0}
/// T linear:  psi^{a16,a15,a13,a23}   T induced: psi^{a17} = Ind_N^T lambda^{a17,0,0}
struct SubgroupCharLabel {
  Subgroup subgroup = Subgroup::N;
  bool induced = false;
  Fq a17;
  Fq a16;
  Fq3 a15;
  Fq3 a13;
  Fq3 a12;
  Fq a23;
};

bool in_subgroup(Subgroup s, const GroupElement& x);
/// Throws NotInSubgroup.
CycInt subgroup_char_value(const FieldTower& ctx, const SubgroupCharLabel& lambda, const GroupElement& x);
/// Every irreducible character of the subgroup.
std::vector<SubgroupCharLabel> list_subgroup_irreducibles(const FieldTower& ctx, Subgroup s);

/// chi(x) computed from the literal construction: the (inflated) character
/// of the inducing subgroup summed over explicit coset representatives.
CycInt induced_value_oracle(const FieldTower& ctx, const CharLabel& chi, const GroupElement& x);

/// Oracle values of every label at one element, sharing the conjugates
/// across labels. Same order as `labels`.
std::vector<CycInt> induced_values_oracle(const FieldTower& ctx, const std::vector<CharLabel>& labels,
                                          const GroupElement& x);

/// Ind_N^U lambda^{a17,0,0}(x), summed over the q^7 representatives
/// x2 x1 x3 of N in U.
CycInt induced_from_n(const FieldTower& ctx, Fq a17, const GroupElement& x);

enum class Ambient : std::uint8_t { U, H, T };

/// |{u in ambient : lambda^u = lambda}| for a character lambda of N, by
/// brute force over the elements of the ambient group.
std::uint64_t inertia_order(const FieldTower& ctx, const SubgroupCharLabel& lambda, Ambient ambient,
                            std::uint64_t cap = kDefaultEnumerationCap);

/// Dense #labels x #classes grid of exact values. Cells store the p-1
/// canonical coefficients as 32-bit integers.
class CharacterTable {
 public:
  CharacterTable(const FieldTower& ctx, std::vector<CharLabel> labels, std::vector<ConjClass> classes);

  const FieldTower& ctx() const { return *ctx_; }
  const std::vector<CharLabel>& labels() const { return labels_; }
  const std::vector<ConjClass>& classes() const { return classes_; }
  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return classes_.size(); }

  /// Fills every cell with char_value; parallel over rows.
  void materialize(unsigned workers = 0);
  bool materialized() const { return !cells_.empty(); }

  /// Stored value when materialized, char_value otherwise.
  CycInt value(std::size_t row, std::size_t col) const;
  /// Overwrites a cell (materializes first).
  void set(std::size_t row, std::size_t col, const CycInt& v);

  /// Row as flat coefficients (p-1 per class).
  std::vector<std::int64_t> row_coeffs(std::size_t row) const;
  std::vector<std::int64_t> col_coeffs(std::size_t col) const;

 private:
  void store(std::size_t row, std::size_t col, const CycInt& v);

  const FieldTower* ctx_;
  std::vector<CharLabel> labels_;
  std::vector<ConjClass> classes_;
  std::vector<std::int32_t> cells_;
};

/// The full table of U with canonical labels and classes.
CharacterTable build_table(const FieldTower& ctx, bool materialize = true, unsigned workers = 0);

}  // namespace d4syl
