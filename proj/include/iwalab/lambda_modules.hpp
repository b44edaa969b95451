#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iwalab/padic.hpp"

namespace iwalab {

// Coefficients lowest degree first.
using PadicPolynomial = std::vector<PadicNumber>;

PadicPolynomial polynomial_from_text(const FieldPtr& field, std::string_view text, char var = 'T');
PadicPolynomial poly_mul(const PadicPolynomial& a, const PadicPolynomial& b);
PadicNumber poly_eval(const PadicPolynomial& a, const PadicNumber& x);
// Monic with every non-leading coefficient of positive valuation.
bool is_distinguished(const PadicPolynomial& g);
// Eisenstein: distinguished and the constant term has valuation exactly v(pi).
bool is_eisenstein(const PadicPolynomial& g);
std::string poly_to_string(const PadicPolynomial& a, char var = 'T');

// An element of O_E[[T]] modulo T^M; integrality is checked on construction.
class TruncatedPowerSeries {
 public:
  TruncatedPowerSeries() = default;
  TruncatedPowerSeries(FieldPtr field, std::vector<PadicNumber> coeffs);
  static TruncatedPowerSeries from_polynomial(const PadicPolynomial& poly, long terms);

  const FieldPtr& field() const { return field_; }
  long terms() const { return static_cast<long>(coeffs_.size()); }
  const std::vector<PadicNumber>& coefficients() const { return coeffs_; }
  const PadicNumber& operator[](long i) const { return coeffs_.at(i); }
  long precision_pi() const;  // minimum over coefficients
  TruncatedPowerSeries truncated(long terms) const;
  TruncatedPowerSeries inverse() const;  // needs a unit constant term

  friend TruncatedPowerSeries operator+(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
  friend TruncatedPowerSeries operator-(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
  friend TruncatedPowerSeries operator*(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);

 private:
  FieldPtr field_;
  std::vector<PadicNumber> coeffs_;
};

enum class Certification { Exact, MuAmbiguous };

struct WeierstrassData {
  long mu = 0;  // in powers of pi
  long lambda = 0;
  PadicPolynomial distinguished;  // monic of degree lambda
  TruncatedPowerSeries unit_head;
  Certification certification = Certification::Exact;
  // pi-adic precision to which the distinguished coefficients are certified,
  // combining arithmetic loss with the T-truncation bound.
  long certified_precision_pi = 0;
};

WeierstrassData weierstrass_prepare(const TruncatedPowerSeries& G);

struct LambdaModuleStructure {
  std::vector<long> mu_parts;             // O/(pi^mu_i)[[T]]
  std::vector<PadicPolynomial> poly_parts;  // Lambda/(g_j)
  std::string models;
};

struct CharacteristicData {
  long mu = 0;
  PadicPolynomial g;
};

CharacteristicData char_series(const LambdaModuleStructure& Y, const FieldPtr& field);

struct GammaSizeReport {
  bool finite = false;
  Rational ratio_valuation;  // v_p(pi^mu g(u^-1 - 1)); #Y_Gamma/#Y^Gamma = p^([E:Q_p] * this)
  long log_p_order = 0;      // [E:Q_p] * ratio_valuation
};

GammaSizeReport gamma_invariants_size(const LambdaModuleStructure& Y, const PadicNumber& u, const FieldPtr& field);

struct CyclicSummand {
  bool finite = false;
  Rational valuation;  // O/(pi^k) has valuation k/e
};

std::vector<CyclicSummand> coinvariants_structure(const std::vector<PadicPolynomial>& poly_parts,
                                                  const PadicNumber& u);

struct SnfReport {
  bool finite = false;
  Rational kernel_valuation;    // 0 when finite; the kernel is free otherwise
  Rational cokernel_valuation;  // sum of diagonal valuations when finite
  std::vector<Rational> diagonal;
  long rank_deficiency = 0;
};

// Smith normal form of u(1+C) - 1 for the companion matrix C of g.
SnfReport snf_oracle(const PadicPolynomial& g, const PadicNumber& u, long precision, long max_degree = 12);

// The module side of the main conjecture, refusing outside its hypotheses.
LambdaModuleStructure main_conjecture_link(const WeierstrassData& W, long p, long chi_order, bool assume_p2);

}  // namespace iwalab
