#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iwalab/characters.hpp"
#include "iwalab/lambda_modules.hpp"
#include "iwalab/padic.hpp"
#include "iwalab/padic_l.hpp"

namespace iwalab {

// A twist e with its admissibility recomputed from the frame on every query.
class TwistPoint {
 public:
  TwistPoint(PadicNumber e, CyclotomicFrame frame, bool excludes_one)
      : e_(std::move(e)), frame_(std::move(frame)), excludes_one_(excludes_one) {}
  static TwistPoint for_character(const PadicNumber& e, const DirichletCharacter& chi, long p);

  const PadicNumber& e() const { return e_; }
  const CyclotomicFrame& frame() const { return frame_; }
  bool excludes_one() const { return excludes_one_; }
  bool admissible() const { return in_twist_domain(e_, frame_, excludes_one_); }
  void require_admissible() const;

 private:
  PadicNumber e_;
  CyclotomicFrame frame_;
  bool excludes_one_ = false;
};

// log_p #G / [E:Q_p] for a predicted group G, exact or only a lower bound.
struct SizeValuation {
  Rational val = 0;
  bool exact = true;
  bool strict = false;  // the true value is strictly larger than `val`
  bool infinite = false;
};

enum class H0Case { OrderNotPPower = 1, InsideCyclotomic = 2, PPowerOutside = 3 };

struct H0Prediction {
  SizeValuation size;
  H0Case which = H0Case::OrderNotPPower;
};

// Three-case analysis for a 1-dimensional even character over Q.
H0Prediction predict_h0(const EmbeddedCharacter& chi, const TwistPoint& e, long prec);
// The same analysis from the character order alone, for user-supplied data
// where the character is not available (h must then be 1).
H0Prediction predict_h0_from_order(long p, long chi_order, bool second_kind);

enum class EqualityStatus { Holds, Fails, Undetermined };

struct BoundsVerdict {
  bool holds = false;
  bool determined = false;  // false when some corank is unknown
  EqualityStatus equality = EqualityStatus::Undetermined;
  std::string detail;
};

struct EulerCharReport {
  std::string character;
  PadicNumber e;
  std::set<long> primes;
  PadicNumber l_value;
  SizeValuation h0;
  SizeValuation h1;
  bool h2_trivial = false;
  bool finite = false;                // L_{p,S}(e) is nonzero to precision
  std::optional<Rational> ec_valuation;  // v_p(L_{p,S}(e)) = h1 - h0 when finite
  std::optional<long> r0, r1, r2;
  long nu_lower = 0;
  std::optional<long> nu_exact;
  std::vector<std::string> notes;
  Provenance provenance = Provenance::Computed;
};

// Report from an L-value already computed on the twist. When the value is
// zero to precision, `nu` carries the order of vanishing found elsewhere.
EulerCharReport euler_char(const H0Prediction& h0, const PadicNumber& e, const std::set<long>& primes,
                           const PadicNumber& l_value, const std::optional<VanishingOrder>& nu = {});
// Full pipeline from a series: evaluates L_{p,S}, predicts H^0, and on a zero
// derives the order of vanishing from the Iwasawa form with `terms` T-terms.
EulerCharReport euler_char(const PadicLSeries& series, const TwistPoint& e, const std::set<long>& primes,
                           long terms = 8);

// (eta(c) - eta(id)) / 2 over Q.
long additive_euler_char(long dim, long conj_trace);

struct SChangeReport {
  Rational factor_valuation = 0;  // sum of v_p of the finite added factors
  long corank_jump = 0;           // added factors vanishing at e = 0
  std::vector<long> vanishing_at;
};

SChangeReport s_change(const EmbeddedCharacter& chi, const PadicNumber& e, const std::set<long>& primes,
                       const std::set<long>& larger, long prec);

// min(1 - r0, nu) <= r2 - r0 <= nu, plus the equality nu = r2 - r0.
BoundsVerdict conjecture_check(const EulerCharReport& report);

struct RootCheck {
  PadicNumber alpha;
  PadicNumber value;         // P(alpha)
  Rational value_valuation;  // a lower bound when value is zero to precision
  Rational required;
  bool passed = false;
};

struct Section6Row {
  PadicNumber e;
  PadicNumber t;        // q^(1-e) - 1
  PadicNumber l_value;  // p^mu P(t) / h(t), up to the unit factor
  Rational abs_l_valuation;
  EulerCharReport report;
  std::optional<long> h1_order_log;  // log_p #H^1 over E when finite and exact
  BoundsVerdict bounds;
};

struct Section6Claim {
  std::string name;
  std::string published_value;
  std::string computed_value;
  bool agrees = false;
  bool expected_discrepancy = false;
};

struct Section6Data {
  std::string name;
  UserIwasawaData iwasawa;
  FieldPtr field;  // E
  long chi_order = 0;
  bool second_kind = false;
  std::vector<Rational> e_values;
  std::map<std::string, long> r2_overrides;  // keyed by e as text
  std::vector<std::vector<PadicNumber>> roots;  // root coordinates in `root_field`
  FieldPtr root_field;
  long root_radius_pi = 0;  // |T - alpha| <= p^(-root_radius_pi/e)
  std::map<std::string, std::string> claims;
  std::set<std::string> expected_discrepancies;
};

struct Section6Report {
  std::string name;
  bool eisenstein = false;
  bool distinguished = false;
  std::vector<Section6Row> rows;
  std::vector<RootCheck> roots;
  std::vector<Section6Claim> claims;
  bool passed = false;  // every claim agrees or disagrees exactly as expected
};

Section6Report section6_report(const Section6Data& data, long prec);

std::string to_string(H0Case which);
std::string to_string(EqualityStatus status);

}  // namespace iwalab
