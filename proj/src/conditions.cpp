// Grid-based evidence for the weight hypotheses. None of these checks is a
// proof; each reports the sampled values it based its decision on.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vfock/errors.hpp"
#include "vfock/numeric.hpp"
#include "vfock/weight.hpp"

namespace vfock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSupTailFraction = 0.25;
constexpr int kMaxDecayPower = 10;
constexpr std::size_t kMaxWitness = 16;

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("condition check needs a non-empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ParameterError("condition grid must be strictly increasing");
  }
}

std::vector<double> points_from(std::span<const double> grid, double r_start) {
  std::vector<double> out;
  for (double r : grid) {
    if (r >= r_start) out.push_back(r);
  }
  return out;
}

// Argmax sample plus the last few samples of the tail.
void add_sup_witness(ConditionReport& rep, std::span<const double> r, std::span<const double> v) {
  if (r.empty()) return;
  const auto imax = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  rep.witness.emplace_back(r[imax], v[imax]);
  const std::size_t from = r.size() > 3 ? r.size() - 3 : 0;
  for (std::size_t i = from; i < r.size(); ++i) {
    if (i != imax) rep.witness.emplace_back(r[i], v[i]);
  }
}

void add_tail_witness(ConditionReport& rep, std::span<const double> r, std::span<const double> v,
                      std::size_t begin) {
  const std::size_t stride = std::max<std::size_t>(1, (r.size() - begin) / kMaxWitness);
  for (std::size_t i = begin; i < r.size(); i += stride) rep.witness.emplace_back(r[i], v[i]);
  if (rep.witness.empty() || rep.witness.back().first != r.back()) {
    rep.witness.emplace_back(r.back(), v.back());
  }
}

ConditionReport empty_domain(const std::string& name) {
  ConditionReport rep;
  rep.name = name;
  rep.passed = false;
  rep.sup_or_lim_estimate = std::numeric_limits<double>::quiet_NaN();
  rep.notes = "fewer than 4 grid points inside the domain of the condition";
  rep.witness.emplace_back(0.0, 0.0);
  return rep;
}

}  // namespace

ConditionReport check_weight_axioms(const RadialWeight& v, std::span<const double> grid) {
  require_grid(grid);
  ConditionReport rep;
  rep.name = "weight_axioms";
  std::ostringstream notes;

  std::vector<double> logs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) logs[i] = v.log_value(grid[i]);

  bool positive = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(logs[i])) {
      positive = false;
      rep.witness.emplace_back(grid[i], logs[i]);
    }
  }
  if (!positive) notes << "v is not positive/finite at some grid points; ";

  bool monotone = true;
  const double step_tol = std::log1p(1e-12);
  for (std::size_t i = 1; i < grid.size() && positive; ++i) {
    if (logs[i] - logs[i - 1] > step_tol) {
      monotone = false;
      rep.witness.emplace_back(grid[i], logs[i] - logs[i - 1]);
      if (rep.witness.size() >= kMaxWitness) break;
    }
  }
  if (!monotone) notes << "v increases on the grid (witness: log v(r_i) - log v(r_{i-1})); ";

  // Rapid decay. Closed-form weights: r psi'(r) strictly increasing along the
  // tail is taken as evidence that r psi' -> inf, which gives v(r) <= C r^{-n}
  // for every n. Custom weights: for each n <= 10, r^n v(r) must be decreasing
  // at the end of the grid and already below 1e-6 v(0) there.
  bool decay = positive;
  const double log_v0 = v.log_value(0.0);
  const double r_max = grid.back();
  double worst = -kInf;
  if (positive && grid.size() >= 2 && r_max > 0.0) {
    bool elasticity_unbounded = false;
    if (v.has_derivatives()) {
      std::vector<double> e;
      for (std::size_t i = tail_begin(grid.size(), kSupTailFraction); i < grid.size(); ++i) {
        e.push_back(grid[i] * v.psi_prime(grid[i]));
      }
      elasticity_unbounded = e.size() >= 2 && e.front() > 0.0;
      for (std::size_t i = 1; i < e.size() && elasticity_unbounded; ++i) {
        elasticity_unbounded = e[i] > e[i - 1];
      }
      if (!elasticity_unbounded) notes << "r psi'(r) is not increasing on the grid tail; ";
    }
    const double r_prev = grid[grid.size() - 2];
    for (int n = 1; n <= kMaxDecayPower; ++n) {
      const double f_last = n * std::log(r_max) + logs.back();
      const double f_prev = r_prev > 0.0 ? n * std::log(r_prev) + logs[logs.size() - 2] : -kInf;
      worst = std::max(worst, f_last - log_v0);
      const bool on_grid = f_last < f_prev && f_last < std::log(1e-6) + log_v0;
      if (on_grid) continue;
      if (elasticity_unbounded) {
        notes << "r^" << n << " v(r) not yet below 1e-6 v(0) at r_max; decay follows from r psi' -> inf; ";
        break;
      }
      decay = false;
      rep.witness.emplace_back(r_max, f_last - log_v0);
      notes << "r^" << n << " v(r) does not decay at the end of the grid; ";
      break;
    }
  }
  rep.passed = positive && monotone && decay;
  rep.sup_or_lim_estimate = worst;
  if (rep.passed) rep.witness.emplace_back(r_max, worst);
  rep.notes = notes.str();
  return rep;
}

ConditionReport check_kp_condition(const GrowthFunction& phi, std::span<const double> grid) {
  require_grid(grid);
  const auto r = points_from(grid, phi.r_phi());
  if (r.size() < 4) return empty_domain("kp_condition");
  ConditionReport rep;
  rep.name = "kp_condition";
  std::vector<double> k(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) k[i] = phi.kp_ratio(r[i]);
  const bool finite = std::all_of(k.begin(), k.end(), [](double x) { return std::isfinite(x); });
  const std::size_t tb = tail_begin(k.size(), kSupTailFraction);
  const bool bounded = finite && tail_bounded_above(std::span(k).subspan(tb));
  rep.passed = bounded;
  rep.sup_or_lim_estimate = finite ? *std::max_element(k.begin(), k.end()) : kInf;
  rep.onset_radius = phi.r_phi();
  if (bounded) {
    add_sup_witness(rep, r, k);
  } else {
    add_tail_witness(rep, r, k, tb);
    rep.notes = "phi'' phi / phi'^2 keeps growing on the grid tail";
  }
  return rep;
}

ConditionReport check_growth_condition(const GrowthFunction& phi, std::span<const double> grid) {
  require_grid(grid);
  const auto r = points_from(grid, phi.r_phi());
  if (r.size() < 4) return empty_domain("growth_condition");
  ConditionReport rep;
  rep.name = "growth_condition";
  // d/d log r of (log phi' - n log r) = r phi''/phi' - n.
  std::vector<double> e(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) e[i] = r[i] * phi.phi_second_over_prime(r[i]);
  const std::size_t tb = tail_begin(e.size(), kSupTailFraction);
  const auto tail = std::span(e).subspan(tb);
  const bool fast = std::all_of(tail.begin(), tail.end(),
                                [](double x) { return std::isfinite(x) && x >= kMaxDecayPower; });
  rep.passed = fast && tail_nondecreasing_or_plateau(tail);
  rep.sup_or_lim_estimate = e.back();
  add_tail_witness(rep, r, e, tb);
  if (!rep.passed) rep.notes = "r phi''/phi' is below 10 on the grid tail; phi' may not dominate r^10";
  return rep;
}

ConditionReport check_two_weight_conditions(const RadialWeight& w, double delta,
                                            std::span<const double> grid) {
  require_grid(grid);
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must satisfy 0 < delta <= 1");
  if (!w.has_derivatives()) {
    throw UnsupportedFamilyError("two-weight conditions need closed-form derivatives; '" + w.name() +
                                 "' is custom");
  }
  const auto r = points_from(grid, std::max(w.patch_radius(), 0.0));
  std::vector<double> rr;
  for (double x : r) {
    if (x > 0.0 && w.psi_prime(x) > 0.0) rr.push_back(x);
  }
  if (rr.size() < 4) return empty_domain("two_weight_conditions");

  ConditionReport rep;
  rep.name = "two_weight_conditions";
  // |w'(r)| r^{1+delta} non-increasing from some onset radius on.
  ConditionReport mono;
  mono.name = "abs_w_prime_r_pow_1_plus_delta_nonincreasing";
  std::vector<double> h(rr.size());
  for (std::size_t i = 0; i < rr.size(); ++i) h[i] = w.log_abs_derivative(rr[i]) + (1.0 + delta) * std::log(rr[i]);
  const double step_tol = std::log1p(1e-10);
  std::size_t onset = rr.size() - 1;
  while (onset > 0 && h[onset] - h[onset - 1] <= step_tol) --onset;
  mono.passed = onset <= rr.size() / 2;
  mono.onset_radius = rr[onset];
  mono.sup_or_lim_estimate = h[onset];
  {
    std::ostringstream os;
    os.precision(17);
    os << "non-increasing from r = " << rr[onset] << " on (log values); delta = " << delta;
    mono.notes = os.str();
  }
  add_tail_witness(mono, rr, h, onset);
  const double R = rr[onset];

  std::vector<double> rt;
  for (double x : rr) {
    if (x >= R) rt.push_back(x);
  }

  // closed-form families are C^2 beyond the patch radius.
  ConditionReport smooth;
  smooth.name = "w_c2_beyond_onset";
  smooth.passed = true;
  smooth.sup_or_lim_estimate = R;
  smooth.notes = "closed-form family";
  smooth.witness.emplace_back(R, 1.0);

  // -w w'' / w'^2 <= C.
  ConditionReport curv;
  curv.name = "neg_w_w_second_over_w_prime_squared_bounded";
  std::vector<double> c(rt.size());
  for (std::size_t i = 0; i < rt.size(); ++i) c[i] = -w.curvature_ratio(rt[i]);
  const bool c_finite = std::all_of(c.begin(), c.end(), [](double x) { return std::isfinite(x); });
  const std::size_t tb = tail_begin(c.size(), kSupTailFraction);
  curv.passed = rt.size() >= 4 && c_finite && tail_bounded_above(std::span(c).subspan(tb));
  curv.sup_or_lim_estimate = c_finite ? *std::max_element(c.begin(), c.end()) : kInf;
  add_sup_witness(curv, rt, c);

  // Consistency: 2 - w''w/w'^2 = phi''phi/phi'^2 with phi = 1/w.
  ConditionReport ident;
  ident.name = "growth_identity";
  const GrowthFunction phi = GrowthFunction::from_weight(w);
  double worst = 0.0;
  for (double x : rt) {
    const double lhs = 2.0 - w.curvature_ratio(x);
    const double rhs = phi.kp_ratio(x);
    const double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    if (rel > worst || !std::isfinite(rel)) {
      worst = std::isfinite(rel) ? rel : kInf;
    }
    if (!(rel <= 1e-8)) ident.witness.emplace_back(x, rel);
  }
  ident.passed = worst <= 1e-8;
  ident.sup_or_lim_estimate = worst;
  if (ident.passed) ident.witness.emplace_back(rt.back(), worst);

  // w(r) <= C |w'(r)| r on the tail, i.e. 1/(r psi'(r)) bounded.
  ConditionReport ineq;
  ineq.name = "w_le_c_abs_w_prime_r";
  std::vector<double> q(rt.size());
  for (std::size_t i = 0; i < rt.size(); ++i) {
    q[i] = std::exp(w.log_value(rt[i]) - w.log_abs_derivative(rt[i]) - std::log(rt[i]));
  }
  const std::size_t qb = tail_begin(q.size(), kSupTailFraction);
  ineq.passed = rt.size() >= 4 && tail_bounded_above(std::span(q).subspan(qb));
  ineq.sup_or_lim_estimate = *std::max_element(q.begin() + static_cast<std::ptrdiff_t>(qb), q.end());
  add_tail_witness(ineq, rt, q, qb);

  rep.passed = mono.passed && curv.passed;
  rep.onset_radius = R;
  rep.sup_or_lim_estimate = curv.sup_or_lim_estimate;
  if (!mono.passed) {
    rep.witness = mono.witness;
    rep.notes = "|w'(r)| r^(1+delta) is not non-increasing over the second half of the grid; ";
  } else if (!curv.passed) {
    rep.witness = curv.witness;
    rep.notes = "-w w''/w'^2 is unbounded on the grid tail; ";
  } else {
    rep.witness = curv.witness;
  }
  if (!ident.passed) rep.notes += "growth identity violated beyond 1e-8; ";
  if (!ineq.passed) rep.notes += "w <= C |w'| r not confirmed on the tail; ";
  rep.subchecks = {smooth, mono, curv, ident, ineq};
  return rep;
}

ConditionReport check_essentialness(const ExponentFunction& psi, std::span<const double> grid) {
  require_grid(grid);
  const auto r = points_from(grid, psi.domain_start);
  if (r.size() < 8) return empty_domain("essentialness");

  ConditionReport rep;
  rep.name = "essentialness";
  const std::size_t half = tail_begin(r.size(), 0.5);
  const auto rt = std::span(r).subspan(half);

  // r psi'(r) -> infinity: strictly increasing along the tail.
  ConditionReport a;
  a.name = kEssentialGrowth;
  std::vector<double> s(rt.size());
  for (std::size_t i = 0; i < rt.size(); ++i) s[i] = rt[i] * psi.psi_prime(rt[i]);
  a.passed = std::all_of(s.begin(), s.end(), [](double x) { return std::isfinite(x); });
  for (std::size_t i = 1; i < s.size() && a.passed; ++i) {
    if (!(s[i] > s[i - 1])) {
      a.passed = false;
      a.witness.emplace_back(rt[i], s[i]);
    }
  }
  a.sup_or_lim_estimate = s.back();
  if (a.passed) add_tail_witness(a, std::vector<double>(rt.begin(), rt.end()), s, 0);

  // psi'' <= (1 - delta) psi'^2 for some delta > 0.
  ConditionReport b;
  b.name = kEssentialCurvature;
  std::vector<double> k(rt.size());
  for (std::size_t i = 0; i < rt.size(); ++i) {
    const double d1 = psi.psi_prime(rt[i]);
    k[i] = psi.psi_second(rt[i]) / (d1 * d1);
  }
  const bool k_finite = std::all_of(k.begin(), k.end(), [](double x) { return std::isfinite(x); });
  const double sup_k = k_finite ? *std::max_element(k.begin(), k.end()) : kInf;
  const double delta = 1.0 - sup_k;
  const auto kt = std::span(k).subspan(tail_begin(k.size(), 0.5));
  // psi'' <= 0 along the tail satisfies the inequality for every delta in (0, 1].
  const bool concave_tail = std::all_of(kt.begin(), kt.end(), [](double x) { return x <= 0.0; });
  b.passed = k_finite && delta > 0.0 && (concave_tail || tail_bounded_above(kt));
  b.sup_or_lim_estimate = delta;
  {
    std::ostringstream os;
    os.precision(17);
    os << "delta estimate = 1 - sup psi''/psi'^2 = " << delta;
    b.notes = os.str();
  }
  add_sup_witness(b, std::vector<double>(rt.begin(), rt.end()), k);

  // psi' + r psi'' >= c / r, i.e. r (psi' + r psi'') bounded below by c > 0.
  ConditionReport c;
  c.name = kEssentialLowerBound;
  std::vector<double> m(rt.size());
  for (std::size_t i = 0; i < rt.size(); ++i) {
    m[i] = rt[i] * (psi.psi_prime(rt[i]) + rt[i] * psi.psi_second(rt[i]));
  }
  const bool m_finite = std::all_of(m.begin(), m.end(), [](double x) { return std::isfinite(x); });
  const double inf_m = m_finite ? *std::min_element(m.begin(), m.end()) : -kInf;
  const std::size_t mb = tail_begin(m.size(), 0.5);
  c.passed = m_finite && inf_m > 0.0 && tail_nondecreasing_or_plateau(std::span(m).subspan(mb));
  c.sup_or_lim_estimate = inf_m;
  if (!c.passed) {
    add_tail_witness(c, std::vector<double>(rt.begin(), rt.end()), m, mb);
    c.notes = "r (psi' + r psi'') decays along the tail; no positive lower bound c is evident";
  } else {
    add_tail_witness(c, std::vector<double>(rt.begin(), rt.end()), m, mb);
  }

  // Normalization radius R psi'(R) = 1, by bisection on the first bracket.
  std::ostringstream notes;
  notes.precision(17);
  bool bracketed = false;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double f0 = r[i - 1] * psi.psi_prime(r[i - 1]) - 1.0;
    const double f1 = r[i] * psi.psi_prime(r[i]) - 1.0;
    if (f0 <= 0.0 && f1 > 0.0) {
      double lo = r[i - 1];
      double hi = r[i];
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * psi.psi_prime(mid) - 1.0 <= 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      rep.onset_radius = 0.5 * (lo + hi);
      notes << "normalization radius R with R psi'(R) = 1: R = " << *rep.onset_radius << "; ";
      bracketed = true;
      break;
    }
  }
  if (!bracketed) {
    notes << "normalization radius R psi'(R) = 1 not bracketed on the grid (r psi' - 1 has no sign change); ";
  }

  rep.passed = a.passed && b.passed && c.passed;
  rep.sup_or_lim_estimate = c.sup_or_lim_estimate;
  for (const auto* sub : {&a, &b, &c}) {
    if (!sub->passed) {
      notes << "failed: " << sub->name << "; ";
      rep.witness.insert(rep.witness.end(), sub->witness.begin(), sub->witness.end());
    }
  }
  if (rep.passed) rep.witness = c.witness;
  rep.notes = notes.str();
  rep.subchecks = {a, b, c};
  return rep;
}

}  // namespace vfock
