#pragma once

// End-to-end verification suite: twelve numbered checks, each with its own
// oracle and tolerance. Shared by the acceptance binary and `qzeros report`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qzeros/qzeros.hpp"

namespace qzeros {

struct CriterionResult {
  int id = 0;
  std::string key;  // short machine-friendly name
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace verify {

using Clock = std::chrono::steady_clock;

inline double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs body, converting library errors into a failed result.
inline CriterionResult run(int id, std::string key, std::string title,
                           const std::function<bool(std::ostringstream&)>& body) {
  CriterionResult r;
  r.id = id;
  r.key = std::move(key);
  r.title = std::move(title);
  std::ostringstream os;
  os.precision(6);
  const auto t0 = Clock::now();
  try {
    r.passed = body(os);
  } catch (const Error& e) {
    os << "error(" << to_string(e.kind()) << "): " << e.what();
    r.passed = false;
  }
  r.seconds = elapsed(t0);
  r.detail = os.str();
  return r;
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// 1. zeros of E_q against -q^{-k}
inline CriterionResult exact_zeros(double q = 0.5) {
  return run(1, "exact-zeros", "E_q zeros in |z| <= 100 match the product form", [q](std::ostringstream& os) {
    const auto t0 = Clock::now();
    const ZeroList zl = find_zeros(make_Eq(QBase(q)), 100.0);
    const double secs = elapsed(t0);
    std::vector<Complex> expect;
    for (double v = 1.0; v <= 100.0; v /= q) expect.emplace_back(-v, 0.0);
    bool ok = zl.zeros.size() == expect.size() && zl.complete;
    double worst = 0.0;
    for (std::size_t i = 0; ok && i < expect.size(); ++i) {
      ok = ok && zl.zeros[i].multiplicity == 1 && zl.zeros[i].winding_ok;
      worst = std::max(worst, rel_err(zl.zeros[i].location, expect[i]));
    }
    ok = ok && worst <= 1e-8 && secs < 2.0;
    os << "found " << zl.zeros.size() << "/" << expect.size() << ", max rel err " << worst << ", " << secs << " s";
    return ok;
  });
}

// 2. Jensen mean of log|E_q| against the zero sum
inline CriterionResult jensen(double q = 0.5, std::uint64_t seed = 20240601) {
  return run(2, "jensen", "Jensen mean of log|f| equals the zero sum", [q, seed](std::ostringstream& os) {
    const auto t0 = Clock::now();
    const SeriesSpec s = make_Eq(QBase(q));
    const ZeroList zl = find_zeros(s, 100.0);
    auto oracle = [q](double r) {
      double sum = 0.0;
      for (double v = 1.0; v < r; v /= q) sum += std::log(r / v);
      return sum;
    };
    const JensenReport base = jensen_check(s, 5.0, zl);
    double worst = std::abs(base.integral_lhs - oracle(5.0));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> gap(0, 5);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    for (int i = 0; i < 10; ++i) {
      const double lo = std::pow(q, -gap(rng));
      const double r = lo * (1.0 + frac(rng) * (1.0 / q - 1.0));
      worst = std::max(worst, std::abs(jensen_check(s, r, zl).integral_lhs - oracle(r)));
    }
    const double secs = elapsed(t0);
    os << "r=5 lhs " << base.integral_lhs << ", max |diff| over 11 radii " << worst << ", " << secs << " s";
    return worst <= 1e-6 && secs < 1.0;
  });
}

// Seeded random series: f_n uniform in the closed unit disk, alpha in
// {0.25, 0.5, 1}, q in {0.3, 0.5, 0.8, 0.6 e^{i phi}}.
inline SeriesSpec random_series(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double alphas[] = {0.25, 0.5, 1.0};
  const Complex qs[] = {Complex(0.3), Complex(0.5), Complex(0.8), std::polar(0.6, 2.0 * kPi * u(rng) - kPi)};
  SeriesSpec s;
  s.alpha = alphas[rng() % 3];
  s.q = QBase(qs[rng() % 4]);
  s.sup_bound = 1.0;
  s.coeff = memoize([seed](std::size_t n) {
    std::mt19937_64 g(seed * 0x9E3779B97F4A7C15ULL + n + 1);
    std::uniform_real_distribution<double> v(0.0, 1.0);
    const double mag = std::sqrt(v(g));
    return std::polar(mag, 2.0 * kPi * v(g));
  });
  s.label = "random";
  return s;
}

// 3. sampled M(r) under the lemma envelope
inline CriterionResult lemma_envelope(std::uint64_t seed = 7) {
  return run(3, "lemma-envelope", "sampled M(r) never exceeds the growth envelope", [seed](std::ostringstream& os) {
    const auto t0 = Clock::now();
    std::vector<double> grid(60);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 1e-2 * std::pow(1e8, static_cast<double>(i) / 59.0);
    const std::size_t specs = 100;
    std::vector<std::size_t> violations(specs, 0);
    std::vector<double> margin(specs, std::numeric_limits<double>::infinity());
    parallel_for(specs, [&](std::size_t i) {
      const SeriesSpec s = random_series(seed * 1000 + i);
      for (double r : grid) {
        const double lm = log_max_modulus_of([&](Complex z) { return eval_log(s, z); }, r, 256);
        const double env = log_lemma_bound(s, r);
        margin[i] = std::min(margin[i], env - lm);
        if (lm > env) ++violations[i];
      }
    });
    std::size_t total = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < specs; ++i) {
      total += violations[i];
      min_margin = std::min(min_margin, margin[i]);
    }
    const double secs = elapsed(t0);
    os << specs << " series x " << grid.size() << " radii, " << total << " violations, min log margin "
       << min_margin << ", " << secs << " s";
    return total == 0 && secs < 60.0;
  });
}

struct NamedSeries {
  std::string name;
  SeriesSpec spec;
};

inline std::vector<NamedSeries> certificate_family(double q) {
  const QBase qb(q);
  return {{"Eq", make_Eq(qb)},
          {"Aq", make_Aq(qb)},
          {"partial-theta", make_partial_theta(qb, 1.0)},
          {"qbessel2(nu=0)", make_qbessel(2, 0.0, qb).series}};
}

// 4. growth-floor certificates on the first eight zeros
inline CriterionResult certificates() {
  return run(4, "certificates", "first zeros clear the growth floors from some N <= 5", [](std::ostringstream& os) {
    bool ok = true;
    for (double q : {0.3, 0.5, 0.8}) {
      for (const NamedSeries& ns : certificate_family(q)) {
        GrowthParams gp;
        gp.A = 2.0;
        gp.eta = 2.0 / 3.0;
        gp.C = growth_exponent_fit(ns.spec, gp.A, default_growth_grid()).C_est;
        const ZeroList zl = find_first_zeros(ns.spec, 8);
        std::vector<double> moduli;
        for (const Complex z : zl.expanded()) moduli.push_back(std::abs(z));
        moduli.resize(8);
        const CertifyResult cr = certify(moduli, gp);
        const bool pass = cr.min_N && *cr.min_N <= 5;
        if (!pass) os << ns.name << " q=" << q << " min_N " << (cr.min_N ? static_cast<long>(*cr.min_N) : -1L) << "; ";
        ok = ok && pass;
      }
    }
    // forced data for E_q at q = 0.5: log|rho_n| = (n-1) log 2
    GrowthParams gp;
    gp.C = growth_exponent_fit(make_Eq(QBase(0.5)), 2.0, default_growth_grid()).C_est;
    std::vector<double> forced;
    for (int n = 1; n <= 8; ++n) forced.push_back(std::pow(2.0, n - 1));
    const CertifyResult cr = certify(forced, gp);
    const bool forced_ok = cr.min_N && *cr.min_N <= 5;
    os << "12 function/q pairs " << (ok ? "pass" : "FAIL") << ", forced E_q data min_N "
       << (cr.min_N ? static_cast<long>(*cr.min_N) : -1L);
    return ok && forced_ok;
  });
}

inline std::vector<NamedSeries> catalog_family(double q) {
  const QBase qb(q);
  return {{"Eq", make_Eq(qb)},
          {"Aq", make_Aq(qb)},
          {"Eq-alpha(1.5)", make_Eq_alpha(qb, 1.5)},
          {"partial-theta", make_partial_theta(qb, 1.0)},
          {"rphis(a=0.25;b=0.5)", make_rphis({Complex(0.25)}, {Complex(0.5)}, qb)},
          {"qbessel2(nu=0)", make_qbessel(2, 0.0, qb).series},
          {"qbessel3(nu=0)", make_qbessel(3, 0.0, qb).series},
          {"Lalpha(1)", make_Lalpha(1.0, qb)},
          {"oscillatory", make_oscillatory({0.0, 0.5, 1.5}, [](std::size_t n) { return static_cast<double>(n + 1); },
                                           1.0, qb, 1.0)}};
}

// 5. counting bounds on the empirical n(R)
inline CriterionResult counting(double q = 0.5) {
  return run(5, "counting", "n(R) respects both counting bounds and n(R_n) <= eta n", [q](std::ostringstream& os) {
    bool ok = true;
    std::size_t rows = 0, constructed = 0;
    for (const NamedSeries& ns : catalog_family(q)) {
      GrowthParams gp;
      const GrowthFit fit = growth_exponent_fit(ns.spec, gp.A, default_growth_grid());
      gp.C = fit.C_est;
      const ZeroList zl = find_first_zeros(ns.spec, 10);
      const CountingReport rep =
          counting_check(zl, gp, log_spaced_grid(2.0, zl.search_radius, 20), hypothesis_radius(fit));
      rows += rep.rows.size();
      constructed += rep.constructed.size();
      if (!rep.pass) os << ns.name << " FAIL; ";
      ok = ok && rep.pass;
    }
    os << rows << " radius rows, " << constructed << " constructed radii over " << catalog_family(q).size()
       << " functions";
    return ok && rows > 0 && constructed > 0;
  });
}

// 6. Hayman expansion fits
inline CriterionResult hayman(double q = 0.5) {
  return run(6, "hayman", "zero asymptotics match the two-term expansion", [q](std::ostringstream& os) {
    const QBase qb(q);
    const SeriesSpec eq = make_Eq(qb);
    const ZeroList ze = find_first_zeros(eq, 7);
    const HaymanFit fe = hayman_fit(scaled_frame_zeros(ze, eq), eq.q.modulus());
    double worst_e = 0.0;
    for (std::size_t n = 0; n < 7; ++n) worst_e = std::max(worst_e, std::abs(fe.s[n] + 1.0));

    const SeriesSpec aq = make_Aq(qb);
    const ZeroList za = find_first_zeros(aq, 8);
    const HaymanFit fa = hayman_fit(scaled_frame_zeros(za, aq), aq.q.modulus());
    bool geometric = true;
    double max_ratio = 0.0;
    for (std::size_t n = 0; n + 2 < fa.s.size(); ++n) {
      const double d0 = std::abs(fa.s[n + 1] - fa.s[n]), d1 = std::abs(fa.s[n + 2] - fa.s[n + 1]);
      max_ratio = std::max(max_ratio, d1 / d0);
    }
    geometric = max_ratio < 0.75;

    // synthetic rho_n = p^{1-2n} (d0 + d1 p^n)
    const double p = 0.6;
    const Complex d0(1.3, -0.4), d1(-0.7, 0.25);
    std::vector<Complex> synth;
    for (int n = 1; n <= 8; ++n) synth.push_back(std::pow(p, 1 - 2 * n) * (d0 + d1 * std::pow(p, n)));
    const HaymanFit fs = hayman_fit(synth, p);
    const double syn_err = std::max(std::abs(fs.d0 - d0), std::abs(fs.d1 - d1));

    os << "E_q max|s_n+1| " << worst_e << ", A_q max diff ratio " << max_ratio << ", synthetic err " << syn_err;
    return worst_e <= 1e-6 && geometric && syn_err <= 1e-9;
  });
}

// 7. the two representations of E_q(cos theta; t)
inline CriterionResult representations(double q = 0.5) {
  return run(7, "representations", "Hermite and 2phi1 routes agree", [q](std::ostringstream& os) {
    std::vector<Complex> thetas;
    for (int k = 0; k <= 33; ++k) thetas.emplace_back(kPi * k / 33.0, 0.0);
    for (int k = 0; k < 11; ++k)
      for (double im : {-0.5, 0.25, 0.5}) thetas.emplace_back(kPi * (k + 0.5) / 11.0, im);
    const double ts[] = {0.1, 0.3, -0.05};
    std::vector<std::pair<Complex, double>> pts;
    for (const Complex th : thetas)
      for (double t : ts) pts.emplace_back(th, t);
    std::vector<double> err(pts.size());
    const QBase qb(q);
    parallel_for(pts.size(), [&](std::size_t i) {
      const Complex a = eval_Eqzt(std::cos(pts[i].first), pts[i].second, qb).value;
      const Complex b = eval_Eqzt_2phi1(pts[i].first, pts[i].second, q).value;
      err[i] = rel_err(b, a);
    });
    const double worst = *std::max_element(err.begin(), err.end());
    os << pts.size() << " points, max rel diff " << worst;
    return pts.size() >= 200 && worst <= 1e-9;
  });
}

// 8. the q-Laguerre series identity
inline CriterionResult laguerre_identity(double q = 0.5) {
  return run(8, "laguerre-identity", "q-Laguerre generating identity", [q](std::ostringstream& os) {
    double worst = 0.0;
    for (double a : {0.5, 1.0})
      for (const Complex z : {Complex(0), Complex(0.5), Complex(-0.5), Complex(2), Complex(1, 1)})
        worst = std::max(worst, verify_laguerre_identity(z, a, QBase(q)).rel_diff);
    os << "10 points, max rel diff " << worst;
    return worst <= 1e-8;
  });
}

// 9. zero-free region
inline CriterionResult zero_free(double q = 0.5) {
  return run(9, "zero-free", "E_q(cos theta; t) has no zeros in the strip", [q](std::ostringstream& os) {
    const RegionReport real = check_zero_free(make_region_grid(q, real_theta_grid(64), 16, 0.99, RegionKind::zero_free));
    const RegionReport cplx =
        check_zero_free(make_region_grid(q, complex_strip_grid(4, 0.3), 16, 0.99, RegionKind::zero_free));
    os << "real grid min|E| " << real.min_observed << " cert " << real.min_certified << "; complex strip min|E| "
       << cplx.min_observed << " cert " << cplx.min_certified;
    return real.pass && cplx.pass;
  });
}

// 10. positivity of Re and of the Im ratio
inline CriterionResult positivity(double q = 0.5) {
  return run(10, "positivity", "Re E_q(cos theta; it) and the Im ratio stay positive", [q](std::ostringstream& os) {
    const RegionReport re =
        check_positivity_re(make_region_grid(q, real_theta_grid(64), 16, 0.99, RegionKind::re_positivity));
    const RegionReport rec =
        check_positivity_re(make_region_grid(q, complex_strip_grid(4, 0.3), 16, 0.99, RegionKind::re_positivity));
    const RegionReport im =
        check_positivity_im(make_region_grid(q, real_theta_grid(64), 16, 0.99, RegionKind::im_positivity));
    os << "Re min " << std::min(re.min_observed, rec.min_observed) << " cert "
       << std::min(re.min_certified, rec.min_certified) << "; Im ratio min " << im.min_observed << " cert "
       << im.min_certified;
    return re.pass && rec.pass && im.pass;
  });
}

// 11. growth constant of E_q(.; t)
inline CriterionResult growth_constant(double q = 0.5) {
  return run(11, "growth-constant", "log M(r)/log^2 r increases toward 1/log(1/q)", [q](std::ostringstream& os) {
    const auto t0 = Clock::now();
    const GrowthConstantReport g = growth_constant_check(q, 0.5, {1e4, 1e6, 1e8});
    const double secs = elapsed(t0);
    os << "ratios";
    for (double r : g.ratios) os << " " << r;
    os << ", target " << g.target << ", increasing " << (g.increasing ? "yes" : "no") << ", approaching "
       << (g.approaching ? "yes" : "no") << ", final rel err " << g.final_relative_error << ", " << secs << " s";
    return g.increasing && g.final_relative_error <= 0.25 && secs < 30.0;
  });
}

// 12. floor formulas against each other and against the A <= 1 counting limit
inline CriterionResult floor_consistency(std::uint64_t seed = 12) {
  return run(12, "floor-consistency", "floor formulas agree; A <= 1 floor obeys its counting limit",
             [seed](std::ostringstream& os) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto n = static_cast<std::size_t>(1 + rng() % 50);
      GrowthParams gp;
      gp.A = 2.0;
      gp.eta = 0.05 + 0.9 * u(rng);
      gp.C = 0.1 + 5.0 * u(rng);
      const double a = log_radius_floor(n, gp);
      const double b = std::log(corollary_floor(n, gp.eta, gp.C));
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    // A <= 1: random polynomials with log M(r) <= sum log(1 + r/|rho|) <= C log^A r on [2, 1e6].
    bool counting_ok = true;
    double relation = 0.0;
    std::size_t checked = 0;
    const std::vector<double> grid = log_spaced_grid(2.0, 1e6, 20);
    for (int i = 0; i < 100; ++i) {
      GrowthParams gp;
      gp.A = 0.5 + 0.5 * u(rng);
      const int degree = 1 + static_cast<int>(rng() % 6);
      std::vector<double> moduli;
      for (int k = 0; k < degree; ++k) moduli.push_back(std::pow(10.0, 3.0 * u(rng)));
      double c = 0.0;
      for (double r : grid) {
        double lm = 0.0;
        for (double m : moduli) lm += std::log1p(r / m);
        c = std::max(c, lm / std::pow(std::log(r), gp.A));
      }
      gp.C = c;
      for (std::size_t n = 1;; ++n) {
        const double Rn = radius_floor(n, gp);
        if (Rn > 1e6 / 2.0) break;
        relation = std::max(relation, std::abs(gp.C * std::pow(2.0, gp.A + 1.0) * std::pow(std::log(Rn), gp.A) -
                                               static_cast<double>(n)) / static_cast<double>(n));
        if (Rn < 2.0) continue;
        ++checked;
        const double count = static_cast<double>(counting_function(moduli, Rn));
        counting_ok = counting_ok && count <= static_cast<double>(n) / (2.0 * std::log(2.0));
      }
    }
    os << "A=2 max rel diff " << worst << "; A<=1 defining relation residual " << relation << ", " << checked
       << " counting checks " << (counting_ok ? "pass" : "FAIL");
    return worst <= 1e-12 && relation <= 1e-10 && counting_ok && checked > 0;
  });
}

}  // namespace verify

inline std::vector<CriterionResult> run_all(double q = 0.5, std::uint64_t seed = 20240601) {
  return {verify::exact_zeros(q),          verify::jensen(q, seed),
          verify::lemma_envelope(seed),    verify::certificates(),
          verify::counting(q),             verify::hayman(q),
          verify::representations(q),      verify::laguerre_identity(q),
          verify::zero_free(q),            verify::positivity(q),
          verify::growth_constant(q),      verify::floor_consistency(seed)};
}

}  // namespace qzeros
