#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iwalab/characters.hpp"
#include "iwalab/classical_l.hpp"
#include "iwalab/padic.hpp"

namespace iwalab {

struct LSeriesOptions {
  long precision = 20;  // target absolute precision N of values
  // Evaluation points must satisfy v(s - 1) >= this; negative values enlarge
  // both the retained terms and the working precision.
  Rational min_u_valuation = 0;
  std::optional<long> terms;  // force at least this many retained powers of (s - 1)
  bool assume_p2 = false;     // p = 2 is accepted only under the odd-order assumption
  long term_cap = 4096;
};

// Truncated expansion of (s - 1)^pole * L_p(s, chi) in powers of u = s - 1.
// Coefficient d_k is accurate modulo p^(N+1+extra); the neglected tail at
// v(u) >= r has valuation >= N by the bound v(d_k) >= (k+1)rho - 1 - v(F).
class PadicLSeries {
 public:
  const EmbeddedCharacter& character() const { return chi_; }
  const CyclotomicFrame& frame() const { return frame_; }
  int pole_order() const { return pole_; }
  const std::vector<PadicNumber>& coefficients() const { return coeffs_; }
  long s_precision() const { return static_cast<long>(coeffs_.size()); }
  long value_precision() const { return precision_; }
  const Rational& min_u_valuation() const { return min_u_; }
  long working_precision() const { return working_; }
  long modulus_valuation() const { return v_f_; }  // v_p(F), F = lcm(f, q0)
  Rational rho() const;                            // kappa - 1/(p-1)
  // Smallest K with v(tail beyond K) >= N at v(u) = r.
  long terms_needed(const Rational& r) const;

  friend PadicLSeries lp_series(const DirichletCharacter& chi, const FieldPtr& field,
                                const LSeriesOptions& options, BernoulliCache& cache);

 private:
  EmbeddedCharacter chi_;
  CyclotomicFrame frame_;
  int pole_ = 0;
  std::vector<PadicNumber> coeffs_;
  long precision_ = 0;
  long working_ = 0;
  long v_f_ = 0;
  Rational min_u_;
};

// Smallest field of this library carrying chi and the twists chi*omega^j.
FieldPtr default_field_for(const DirichletCharacter& chi, long p);

PadicLSeries lp_series(const DirichletCharacter& chi, const FieldPtr& field, const LSeriesOptions& options = {},
                       BernoulliCache& cache = BernoulliCache::shared());
PadicLSeries lp_series(const EmbeddedCharacter& chi, const LSeriesOptions& options = {},
                       BernoulliCache& cache = BernoulliCache::shared());

// L_p(e, chi); precision is tracked through the arithmetic and capped at N.
PadicNumber lp_eval(const PadicLSeries& series, const PadicNumber& e);

// F_v(<v>^(-s), eta) = 1 - eta(v) <v>^(-s); exact 1 when v | f_eta.
PadicNumber diamond_euler_factor(long v, const EmbeddedCharacter& eta, const PadicNumber& s, long prec);

// L_{p,S}(e, chi) = L_p(e, chi) * prod_{v in S, v != p} F_v(<v>^(-e), chi omega^-1).
PadicNumber lps_eval(const PadicLSeries& series, const PadicNumber& e, const std::set<long>& primes);

enum class Provenance { Computed, UserSupplied };

struct PrecisionLedger {
  long value_precision = 0;  // N' of the Phi coefficients
  long terms = 0;            // M
  long delta = 0;            // loss relative to the series precision
};

// L_p(s) = Phi(q^(1-s) - 1) / h(q^(1-s) - 1) with Phi in O_E[[T]] mod T^M.
struct IwasawaAnalyticSeries {
  long p = 0;
  FieldPtr field;
  Rational q;                    // the topological generator q_k
  std::vector<PadicNumber> phi;  // T^0 .. T^(M-1)
  std::vector<PadicNumber> h;    // h_chi(T), degree <= 1
  Provenance provenance = Provenance::Computed;
  PrecisionLedger ledger;
  std::optional<DirichletCharacter> character;  // needed for S-truncation
  std::vector<PadicNumber> distinguished;       // user data: P(T)
  long mu = 0;                                  // user data: Phi = p^mu P(T)

  long terms() const { return static_cast<long>(phi.size()); }
  // T_e = q^(1-e) - 1.
  PadicNumber t_at(const PadicNumber& e, long prec) const;
  PadicNumber phi_at(const PadicNumber& t) const;
  PadicNumber h_at(const PadicNumber& t) const;
  // Phi(T_e)/h(T_e); PoleAtOne when h(T_e) vanishes.
  PadicNumber evaluate(const PadicNumber& e, long prec) const;
};

// h_chi per the second-kind rule: psi(q)(1+T) - 1 or 1.
std::vector<PadicNumber> h_polynomial(const EmbeddedCharacter& chi, const CyclotomicFrame& frame, long prec);

IwasawaAnalyticSeries to_iwasawa_series(const PadicLSeries& series, long terms);

struct UserIwasawaData {
  long p = 0;
  Rational q;
  std::vector<PadicNumber> h;  // defaults to 1
  long mu = 0;
  std::vector<PadicNumber> P;
};

IwasawaAnalyticSeries from_user_data(const UserIwasawaData& data);

struct VanishingOrder {
  long lower = 0;
  std::optional<long> exact;
  long from_phi = 0;            // multiplicity of T_e in Phi (lower bound when not exact)
  long from_h = 0;              // subtracted pole order of h
  long from_euler_factors = 0;  // zeros of the added diamond factors
};

VanishingOrder order_of_vanishing(const IwasawaAnalyticSeries& phi, const PadicNumber& e,
                                  const std::set<long>& primes, long prec);

struct InterpolationReport {
  long m = 0;
  PadicNumber analytic;       // L_{p,S}(m, chi)
  PadicNumber classical;      // embedded L_S*(m, chi omega^(m-1))
  CyclotomicValue exact;      // the classical value before embedding
  long residual_valuation = 0;
  long target = 0;            // N - delta
  bool passed = false;
  bool m_zero_hedge = false;  // interpolation at m = 0 is asserted only "sometimes" in general
};

InterpolationReport interpolation_check(const PadicLSeries& series, long m, const std::set<long>& primes,
                                        BernoulliCache& cache = BernoulliCache::shared(), long allowed_loss = 5);

}  // namespace iwalab
