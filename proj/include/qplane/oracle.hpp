#pragma once

#include <array>
#include <map>
#include <vector>

#include "json.hpp"
#include "qplane/koszul.hpp"

namespace qplane {

struct ExactCohomology {
  std::size_t n = 0;
  std::size_t h0 = 0, h1 = 0, h2 = 0;
  std::size_t rank0 = 0, rank1 = 0;
  bool chain_ok = false;  // d1 d0 = 0 exactly

  bool exact() const { return h0 + h1 + h2 == 0; }
  nlohmann::json to_json() const;
};

constexpr std::size_t kDefaultOracleCap = 64;

ExactCohomology exact_cohomology(const ExactKoszulComplex& cx, std::size_t cap = kDefaultOracleCap);
ExactCohomology exact_cohomology(const QPair& pair, const CharacterPoint& gamma,
                                 std::size_t cap = kDefaultOracleCap);

/// Element of the two-sided operator algebra generated by left (L_x, L_y) and
/// right (R_x, R_y) multiplications on the quantum plane, kept in the normal
/// order L_x^a L_y^b R_x^c R_y^d with L_y L_x = q L_x L_y and R_y R_x = q^{-1} R_x R_y.
class TensorTerm {
 public:
  using Monomial = std::array<int, 4>;  // exponents of L_x, L_y, R_x, R_y

  TensorTerm() = default;
  static TensorTerm constant(const GaussRational& c);
  static TensorTerm generator(int index, const GaussRational& c = GaussRational(1));
  static TensorTerm l_x() { return generator(0); }
  static TensorTerm l_y() { return generator(1); }
  static TensorTerm r_x() { return generator(2); }
  static TensorTerm r_y() { return generator(3); }

  TensorTerm plus(const TensorTerm& o) const;
  TensorTerm scaled(const GaussRational& c) const;
  TensorTerm times(const TensorTerm& o, const GaussRational& q) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, GaussRational>& terms() const { return terms_; }

  /// R_x -> gamma(x), R_y -> gamma(y), L_x^a L_y^b -> T^a S^b.
  ExactMatrix specialize(const ExactMatrix& t, const ExactMatrix& s, const GaussRational& gx,
                         const GaussRational& gy) const;

 private:
  void add(const Monomial& m, const GaussRational& c);
  std::map<Monomial, GaussRational> terms_;
};

/// Resolution differentials d0 = [R_y - q L_y; L_x - q R_x], d1 = [L_x - R_x, L_y - R_y].
struct SymbolicResolution {
  std::array<TensorTerm, 2> d0;
  std::array<TensorTerm, 2> d1;
  GaussRational q;

  explicit SymbolicResolution(const GaussRational& q);
  /// d1 d0 computed in the normal-ordered algebra.
  TensorTerm composite() const;
};

/// The resolution complex after applying the character in the right slot and
/// the module action in the left slot.
struct ResolutionComplex {
  ExactMatrix d0, d1;
  bool chain_ok = false;
};

ResolutionComplex specialize_resolution(const QPair& pair, const CharacterPoint& gamma,
                                        std::size_t cap = kDefaultOracleCap);

struct TorConsistencyReport {
  bool symbolic_chain_ok = false;
  bool specialized_chain_ok = false;
  bool matches_koszul = false;
  bool ok() const { return symbolic_chain_ok && specialized_chain_ok && matches_koszul; }
  nlohmann::json to_json() const;
};

TorConsistencyReport tor_consistency_report(const QPair& pair, const CharacterPoint& gamma,
                                            std::size_t cap = kDefaultOracleCap);
bool tor_consistency(const QPair& pair, const CharacterPoint& gamma,
                     std::size_t cap = kDefaultOracleCap);

/// Candidates with nonzero exact cohomology.
std::vector<CharacterPoint> exact_spectral_points(const QPair& pair,
                                                  const std::vector<CharacterPoint>& candidates,
                                                  std::size_t cap = kDefaultOracleCap);

}  // namespace qplane
